#include <doctest.h>

#include <cmath>
#include <set>

#include "papqr/distribution.hpp"
#include "papqr/hypothesis.hpp"
#include "papqr/rng.hpp"
#include "papqr/vc.hpp"

using namespace papqr;

namespace {

std::vector<DomainPoint> hypercube_points(int p) {
  std::vector<DomainPoint> pts;
  for (std::size_t code = 0; code < (std::size_t{1} << p); ++code) {
    SignVector s(static_cast<std::size_t>(p));
    for (int b = 0; b < p; ++b)
      s[static_cast<std::size_t>(b)] = code & (std::size_t{1} << b) ? -1 : 1;
    pts.emplace_back(std::move(s));
  }
  return pts;
}

HypothesisClass random_finite_class(int domain_size, int count, Rng& rng) {
  std::set<std::vector<std::int8_t>> rows;
  while (static_cast<int>(rows.size()) < count) {
    std::vector<std::int8_t> row(static_cast<std::size_t>(domain_size));
    for (auto& v : row) v = rng.uniform01() < 0.5 ? 1 : -1;
    rows.insert(std::move(row));
  }
  std::vector<Hypothesis> members;
  for (const auto& row : rows) members.push_back(Hypothesis::make_table(row));
  return HypothesisClass::finite_class(domain_size, std::move(members));
}

}  // namespace

TEST_CASE("evaluate matches the query definitions") {
  const DomainPoint x = SignVector{1, -1, 1};
  CHECK(evaluate(Hypothesis::make_stump(2), x) == -1);
  CHECK(evaluate(Hypothesis::make_stump(1), x) == 1);
  // Ties at the cutoff are +1.
  CHECK(evaluate(Hypothesis::make_threshold(0.5), DomainPoint{0.5}) == 1);
  CHECK(evaluate(Hypothesis::make_threshold(0.5), DomainPoint{0.7}) == -1);
  CHECK(evaluate(Hypothesis::make_table({1, -1}), DomainPoint{ElementId{1}}) ==
        -1);
}

TEST_CASE("evaluate rejects domain mismatches") {
  CHECK_THROWS_AS(evaluate(Hypothesis::make_threshold(0.0), DomainPoint{SignVector{1}}),
                  DomainMismatchError);
  CHECK_THROWS_AS(evaluate(Hypothesis::make_stump(4), DomainPoint{SignVector{1, -1}}),
                  DomainMismatchError);
  CHECK_THROWS_AS(evaluate(Hypothesis::make_table({1}), DomainPoint{ElementId{3}}),
                  DomainMismatchError);
}

TEST_CASE("evaluate is pure") {
  Rng rng(11);
  const Hypothesis h = Hypothesis::make_threshold(0.37);
  for (int i = 0; i < 100; ++i) {
    const DomainPoint x = rng.uniform(-1.0, 2.0);
    CHECK(evaluate(h, x) == evaluate(h, x));
  }
}

TEST_CASE("signature is componentwise evaluate") {
  const std::vector<DomainPoint> pts{0.2, 0.8};
  CHECK(signature(Hypothesis::make_threshold(0.5), pts) ==
        std::vector<std::int8_t>{1, -1});
  CHECK(signature(Hypothesis::make_threshold(0.5), {}).empty());
  const std::vector<DomainPoint> rows{SignVector{1, 1}, SignVector{-1, 1}};
  CHECK(signature(Hypothesis::make_stump(1), rows) ==
        std::vector<std::int8_t>{1, -1});
}

TEST_CASE("true_mean closed forms") {
  const auto uni = Distribution::uniform(0.0, 1.0);
  CHECK(true_mean(uni, Hypothesis::make_threshold(0.5)) == doctest::Approx(0.0));
  CHECK(true_mean(uni, Hypothesis::make_threshold(0.25)) ==
        doctest::Approx(-0.5));
  CHECK(true_mean(uni, Hypothesis::make_threshold(7.0)) == doctest::Approx(1.0));

  const auto prod = Distribution::product_signs_dist({0.3, -0.6});
  CHECK(true_mean(prod, Hypothesis::make_stump(2)) == doctest::Approx(-0.6));

  const auto mass = Distribution::discrete({DomainPoint{0.42}}, {1.0});
  CHECK(true_mean(mass, Hypothesis::make_threshold(0.42)) == doctest::Approx(1.0));
  CHECK(true_mean(mass, Hypothesis::make_threshold(0.41)) ==
        doctest::Approx(-1.0));

  CHECK_THROWS_AS(true_mean(uni, Hypothesis::make_stump(1)), UnsupportedError);
}

TEST_CASE("monte-carlo mean converges at the 3/sqrt(N) rate") {
  const std::int64_t n = 10000;
  const double tol = 3.0 / std::sqrt(static_cast<double>(n));
  Rng rng(2024);
  int hits = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    Rng trial = rng.child(static_cast<std::uint64_t>(t));
    std::vector<double> biases(6);
    for (double& b : biases) b = trial.uniform(-1.0, 1.0);
    const auto d = Distribution::product_signs_dist(biases);
    const int coord = 1 + static_cast<int>(trial.uniform_int(6));
    const double est = mc_mean(d, Hypothesis::make_stump(coord), trial, n);
    if (std::abs(est - biases[static_cast<std::size_t>(coord - 1)]) <= tol)
      ++hits;
  }
  CHECK(hits >= 99);
}

TEST_CASE("brute-force VC oracles") {
  const auto thr = HypothesisClass::all_thresholds(0.0, 1.0);
  const std::vector<DomainPoint> pts{0.1, 0.5, 0.9};
  CHECK(compute_vc(thr, pts) == 1);
  CHECK(compute_dual_vc(thr, pts) == 1);

  const auto stumps = HypothesisClass::all_stumps(3);
  const auto cube = hypercube_points(3);
  CHECK(compute_dual_vc(stumps, cube) == 3);
  CHECK(compute_vc(stumps, cube) == 1);  // floor(log2 3)

  const auto lone = HypothesisClass::finite_class(
      3, {Hypothesis::make_table({1, -1, 1})});
  const auto dom = lone.finite_domain_points();
  CHECK(compute_vc(lone, dom) == 0);
}

TEST_CASE("declared dimensions match brute force on small built-ins") {
  // p = 8 would need the full 256-point cube, beyond the oracle's limit.
  for (int p : {2, 4}) {
    const auto cls = HypothesisClass::all_stumps(p);
    const auto cube = hypercube_points(p);
    CHECK(compute_vc(cls, cube) == cls.vc);
    CHECK(compute_dual_vc(cls, cube) == cls.dual_vc);
  }
}

TEST_CASE("dual VC stays below 2^(vc+1)") {
  Rng rng(5150);
  for (int t = 0; t < 60; ++t) {
    Rng trial = rng.child(static_cast<std::uint64_t>(t));
    const int q = 3 + static_cast<int>(trial.uniform_int(6));
    const int count =
        2 + static_cast<int>(trial.uniform_int(std::min(30, (1 << q) - 2)));
    const auto cls = random_finite_class(q, count, trial);
    const auto dom = cls.finite_domain_points();
    const int d = compute_vc(cls, dom);
    const int dual = compute_dual_vc(cls, dom);
    CHECK(dual < (1 << (d + 1)));
  }
}

TEST_CASE("finite classes reject duplicate behaviors") {
  CHECK_THROWS_AS(HypothesisClass::finite_class(
                      2, {Hypothesis::make_table({1, -1}),
                          Hypothesis::make_table({1, -1})}),
                  std::invalid_argument);
}

TEST_CASE("distribution validation") {
  CHECK_THROWS_AS(Distribution::discrete({DomainPoint{0.0}}, {0.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Distribution::product_signs_dist({1.5}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Distribution::uniform(1.0, 0.0), std::invalid_argument);
}
