#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "papqr/cover.hpp"
#include "papqr/rng.hpp"
#include "papqr/vc.hpp"

using namespace papqr;

namespace {

std::set<std::vector<std::int8_t>> as_set(
    const std::vector<std::vector<std::int8_t>>& v) {
  return {v.begin(), v.end()};
}

HypothesisClass random_finite_class(int domain_size, int count, Rng& rng) {
  count = std::min(count, (1 << domain_size) - 1);
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

TEST_CASE("threshold projection patterns sweep sorted points") {
  const auto cls = HypothesisClass::all_thresholds(0.0, 1.0);
  const std::vector<DomainPoint> t{0.2, 0.8};
  const auto pats = as_set(projection_patterns(cls, t));
  CHECK(pats == std::set<std::vector<std::int8_t>>{
                    {-1, -1}, {1, -1}, {1, 1}});

  // Random cutoffs never realize a pattern outside the sweep.
  Rng rng(77);
  std::set<std::vector<std::int8_t>> seen;
  for (int i = 0; i < 10000; ++i) {
    const Hypothesis h = Hypothesis::make_threshold(rng.uniform(-0.5, 1.5));
    seen.insert(signature(h, t));
  }
  CHECK(seen == pats);
}

TEST_CASE("empty point set yields the single empty pattern") {
  const auto cls = HypothesisClass::all_thresholds(0.0, 1.0);
  const auto pats = projection_patterns(cls, {});
  REQUIRE(pats.size() == 1);
  CHECK(pats.front().empty());
}

TEST_CASE("stump patterns read point columns") {
  const auto cls = HypothesisClass::all_stumps(2);
  const std::vector<DomainPoint> t{SignVector{1, -1}};
  CHECK(as_set(projection_patterns(cls, t)) ==
        std::set<std::vector<std::int8_t>>{{1}, {-1}});
}

TEST_CASE("build_cover picks midpoint and offset cutoffs") {
  const auto cls = HypothesisClass::all_thresholds(0.0, 1.0);
  const std::vector<DomainPoint> w{0.2, 0.8, 0.2};
  const CoverResult cover = build_cover(cls, w);

  REQUIRE(cover.public_points.size() == 2);  // dedup keeps first occurrence
  CHECK(as_real(cover.public_points[0]) == 0.2);
  CHECK(as_real(cover.public_points[1]) == 0.8);
  CHECK(cover.full_public_sample.size() == 3);

  REQUIRE(cover.representatives.size() == 3);
  std::vector<double> cutoffs;
  for (const auto& h : cover.representatives) cutoffs.push_back(h.cutoff);
  std::sort(cutoffs.begin(), cutoffs.end());
  CHECK(cutoffs[0] == doctest::Approx(-0.8));
  CHECK(cutoffs[1] == doctest::Approx(0.5));
  CHECK(cutoffs[2] == doctest::Approx(1.8));
}

TEST_CASE("empty public sample still produces one representative") {
  const auto cls = HypothesisClass::all_thresholds(0.0, 1.0);
  const CoverResult cover = build_cover(cls, {});
  CHECK(cover.representatives.size() == 1);
  CHECK(cover.patterns.size() == 1);
  // Everything projects onto the lone representative.
  CHECK(project(cover, Hypothesis::make_threshold(-3.0)).cutoff ==
        project(cover, Hypothesis::make_threshold(9.0)).cutoff);
}

TEST_CASE("full-domain public sample recovers an explicit class") {
  Rng rng(3);
  const auto cls = random_finite_class(5, 4, rng);
  const auto w = cls.finite_domain_points();
  const CoverResult cover = build_cover(cls, w);
  // Distinct behaviors stay distinct on the full domain.
  CHECK(cover.representatives.size() == cls.members.size());
}

TEST_CASE("project returns the pattern's representative") {
  const auto cls = HypothesisClass::all_thresholds(0.0, 1.0);
  const std::vector<DomainPoint> w{0.2, 0.8};
  const CoverResult cover = build_cover(cls, w);

  const Hypothesis& rep = project(cover, Hypothesis::make_threshold(0.3));
  CHECK(rep.cutoff == doctest::Approx(0.5));
  // Idempotent on representatives.
  for (const Hypothesis& h : cover.representatives)
    CHECK(project(cover, h).cutoff == h.cutoff);
}

TEST_CASE("project rejects hypotheses outside the covered class") {
  const auto cls = HypothesisClass::finite_class(
      2, {Hypothesis::make_table({1, 1}), Hypothesis::make_table({1, -1})});
  const auto cover = build_cover(cls, cls.finite_domain_points());
  CHECK_THROWS_AS(project(cover, Hypothesis::make_table({-1, -1})),
                  DomainMismatchError);
}

TEST_CASE("projection consistency on the full public sample") {
  Rng rng(99);
  const auto cls = HypothesisClass::all_thresholds(0.0, 1.0);
  std::vector<DomainPoint> w;
  for (int i = 0; i < 60; ++i) w.emplace_back(rng.uniform(0.0, 1.0));
  w.push_back(w[3]);  // force duplicates
  w.push_back(w[10]);
  const CoverResult cover = build_cover(cls, w);
  for (int i = 0; i < 500; ++i) {
    const Hypothesis h = Hypothesis::make_threshold(rng.uniform(-0.2, 1.2));
    const Hypothesis& rep = project(cover, h);
    for (const DomainPoint& u : cover.full_public_sample)
      CHECK(evaluate(rep, u) == evaluate(h, u));
  }
}

TEST_CASE("public_sample_size arithmetic") {
  CHECK(public_sample_size(1, 0.2, 0.1, 4.0) == 79);
  CHECK(public_sample_size(1, 0.99, 0.99, 1.0) == 1);
  CHECK_THROWS_AS(public_sample_size(0, 0.2, 0.1, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(public_sample_size(1, 0.0, 0.1, 4.0), std::invalid_argument);

  // Halving alpha more than doubles the requirement.
  for (double a : {0.4, 0.2, 0.1, 0.05}) {
    CHECK(public_sample_size_raw(2, a / 2, 0.1, 4.0) >
          2.0 * public_sample_size_raw(2, a, 0.1, 4.0));
  }
}

TEST_CASE("sauer bound holds for random explicit covers") {
  Rng rng(42);
  for (int t = 0; t < 40; ++t) {
    Rng trial = rng.child(static_cast<std::uint64_t>(t));
    const int q = 4 + static_cast<int>(trial.uniform_int(8));
    const int count = 2 + static_cast<int>(trial.uniform_int(20));
    const auto cls = random_finite_class(q, count, trial);
    const auto dom = cls.finite_domain_points();

    std::vector<DomainPoint> w;
    const int draws = 1 + static_cast<int>(trial.uniform_int(2 * q));
    for (int i = 0; i < draws; ++i)
      w.emplace_back(ElementId{static_cast<std::int32_t>(trial.uniform_int(q))});
    const CoverResult cover = build_cover(cls, w);

    const int d = compute_vc(cls, dom);
    if (cover.public_points.size() >= static_cast<std::size_t>(d)) {
      CHECK(static_cast<double>(cover.patterns.size()) <=
            sauer_bound(cover.public_points.size(), d) + 1e-9);
    }
    CHECK(cover.patterns.size() <=
          (std::size_t{1} << std::min<std::size_t>(cover.public_points.size(), 20)));
  }
}

TEST_CASE("covers from enough public data are good approximations") {
  // Smaller-scale version of the Lemma-style cover check: m drawn per the
  // sample-size formula makes the projection disagreement at most alpha/4
  // in most seeded trials.
  const double alpha = 0.2, beta = 0.1;
  const auto m = static_cast<std::size_t>(public_sample_size(1, alpha, beta, 4.0));
  const auto cls = HypothesisClass::all_thresholds(0.0, 1.0);
  const auto uni = Distribution::uniform(0.0, 1.0);
  Rng rng(1234);
  int good = 0;
  const int trials = 60;
  for (int t = 0; t < trials; ++t) {
    Rng trial = rng.child(static_cast<std::uint64_t>(t));
    const auto w = uni.sample_many(m, trial);
    const CoverResult cover = build_cover(cls, w);
    if (worst_projection_disagreement(cover, uni) <= alpha / 4.0) ++good;
  }
  CHECK(good >= 54);  // >= 90%
}

TEST_CASE("worst projection disagreement is exact on a hand instance") {
  const auto cls = HypothesisClass::all_thresholds(0.0, 1.0);
  const std::vector<DomainPoint> w{0.2, 0.8};
  const CoverResult cover = build_cover(cls, w);
  // Intervals: (-inf,0.2) rep -0.8, [0.2,0.8) rep 0.5, [0.8,inf) rep 1.8.
  // Under U[0,1] the worst mass is between cutoff 0.8^- and rep 0.5: 0.3.
  CHECK(worst_projection_disagreement(cover, Distribution::uniform(0.0, 1.0)) ==
        doctest::Approx(0.3));
}
