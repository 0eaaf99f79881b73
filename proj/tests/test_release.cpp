#include <doctest.h>

#include <cmath>

#include "papqr/release.hpp"
#include "papqr/serialize.hpp"

using namespace papqr;

namespace {

ReleaseStructure constant_release(const HypothesisClass& cls,
                                  const std::vector<DomainPoint>& w,
                                  double value) {
  ReleaseStructure g;
  g.cls = cls;
  g.cover = build_cover(cls, w);
  g.answers.assign(g.cover.patterns.size(), value);
  return g;
}

}  // namespace

TEST_CASE("pap_release on a point mass reproduces every query exactly") {
  const auto cls = HypothesisClass::all_thresholds(0.0, 1.0);
  const auto mass = Distribution::discrete({DomainPoint{0.3}}, {1.0});
  Rng rng(404);
  const auto x = mass.sample_many(50, rng);
  const auto w = mass.sample_many(5, rng);
  ReleaseOptions opts;
  opts.noise_off = true;
  const auto g = pap_release(x, w, cls, 0.2, 0.1, 1.0, 1e-5, rng, opts);
  for (double t : {-1.0, 0.1, 0.29, 0.3, 0.31, 0.7, 2.0}) {
    const Hypothesis h = Hypothesis::make_threshold(t);
    CHECK(query(g, h) ==
          doctest::Approx(evaluate(h, DomainPoint{0.3})));
  }
  CHECK(evaluate_error(g, mass).value == doctest::Approx(0.0));
}

TEST_CASE("oracle-mode pap_release with an exact cover matches dataset means") {
  // All data atoms appear in the public sample, so each query's empirical
  // mean is constant on its pattern and the release inherits the oracle
  // accuracy of the weights update.
  const std::vector<DomainPoint> atoms{0.1, 0.35, 0.62, 0.8};
  const auto dist =
      Distribution::discrete(atoms, {0.4, 0.3, 0.2, 0.1});
  const auto cls = HypothesisClass::all_thresholds(0.0, 1.0);
  Rng rng(115);
  const auto x = dist.sample_many(2000, rng);
  const double alpha = 0.1;
  ReleaseOptions opts;
  opts.noise_off = true;
  const auto g = pap_release(x, atoms, cls, alpha, 0.1, 1.0, 1e-5, rng, opts);
  // Exact sup of |G(h) - mean_x h| via the empirical distribution of x.
  const auto err = evaluate_error(g, Distribution::empirical(x));
  CHECK(err.exact);
  CHECK(err.value <= alpha / 2.0 + 1e-12);
}

TEST_CASE("query factors through patterns") {
  const auto cls = HypothesisClass::all_thresholds(0.0, 1.0);
  Rng rng(31337);
  const auto uni = Distribution::uniform(0.0, 1.0);
  const auto x = uni.sample_many(4000, rng);
  const auto w = uni.sample_many(40, rng);
  ReleaseOptions opts;
  opts.noise_off = true;
  const auto g = pap_release(x, w, cls, 0.2, 0.1, 1.0, 1e-5, rng, opts);

  // Representatives answer with their own stored value.
  for (std::size_t k = 0; k < g.cover.representatives.size(); ++k)
    CHECK(query(g, g.cover.representatives[k]) ==
          doctest::Approx(g.answers[k]));

  // Hypotheses sharing a pattern share the answer.
  const auto sorted = g.cover.sweep_values;
  for (std::size_t j = 0; j + 1 < sorted.size(); ++j) {
    const double a = sorted[j];
    const double b = sorted[j + 1];
    const double t1 = a + (b - a) / 3.0;
    const double t2 = a + 2.0 * (b - a) / 3.0;
    CHECK(query(g, Hypothesis::make_threshold(t1)) ==
          query(g, Hypothesis::make_threshold(t2)));
  }
}

TEST_CASE("noise-off release under the uniform distribution is accurate") {
  const auto cls = HypothesisClass::all_thresholds(0.0, 1.0);
  const auto uni = Distribution::uniform(0.0, 1.0);
  Rng rng(2100);
  const double alpha = 0.15;
  const auto x = uni.sample_many(20000, rng);
  const auto w = uni.sample_many(500, rng);
  ReleaseOptions opts;
  opts.noise_off = true;
  const auto g = pap_release(x, w, cls, alpha, 0.1, 1.0, 1e-5, rng, opts);
  CHECK(std::abs(query(g, Hypothesis::make_threshold(0.3)) - (-0.4)) <= alpha);
  CHECK(evaluate_error(g, uni).value <= alpha);
}

TEST_CASE("release sample-size calculators") {
  const auto s = release_sample_bounds(1, 1, 0.1, 0.1, 1.0, 1e-5);
  CHECK(s.private_n == 3354);
  CHECK(s.public_m == 47);

  // n scales exactly as sqrt(p).
  CHECK(release_private_bound_raw(2, 4, 0.1, 0.1, 1.0, 1e-5) ==
        doctest::Approx(2.0 * release_private_bound_raw(2, 1, 0.1, 0.1, 1.0, 1e-5)));
  // n scales exactly as 1/eps.
  CHECK(release_private_bound_raw(2, 4, 0.1, 0.1, 0.5, 1e-5) ==
        doctest::Approx(2.0 * release_private_bound_raw(2, 4, 0.1, 0.1, 1.0, 1e-5)));
  // m ignores the privacy parameters entirely.
  const auto a = release_sample_bounds(3, 9, 0.1, 0.05, 1.0, 1e-5);
  const auto b = release_sample_bounds(3, 9, 0.1, 0.05, 0.2, 1e-9);
  CHECK(a.public_m == b.public_m);

  // Fact-based fallback replaces p with 2^(d+1).
  const auto direct = release_sample_bounds(2, 8, 0.1, 0.1, 1.0, 1e-5);
  const auto fallback =
      release_sample_bounds(2, 1, 0.1, 0.1, 1.0, 1e-5, 1.0, 1.0, true);
  CHECK(direct.private_n == fallback.private_n);

  CHECK_THROWS_AS(release_sample_bounds(0, 1, 0.1, 0.1, 1.0, 1e-5),
                  std::invalid_argument);
}

TEST_CASE("evaluate_error closed forms") {
  const auto cls = HypothesisClass::all_thresholds(0.0, 1.0);
  const std::vector<DomainPoint> w{0.2, 0.8};

  // Constant-zero release under a point mass misses by exactly 1.
  const auto zero = constant_release(cls, w, 0.0);
  const auto mass = Distribution::discrete({DomainPoint{0.5}}, {1.0});
  CHECK(evaluate_error(zero, mass).value == doctest::Approx(1.0));

  // Release answering the exact means of its representative cutoffs under
  // U[0,1]: patterns answer -1, 0, +1 and the middle interval dominates.
  ReleaseStructure g = constant_release(cls, w, 0.0);
  const auto uni = Distribution::uniform(0.0, 1.0);
  for (std::size_t k = 0; k < g.cover.representatives.size(); ++k)
    g.answers[k] = true_mean(uni, g.cover.representatives[k]);
  CHECK(evaluate_error(g, uni).value == doctest::Approx(0.6));

  // Grid fallback reports its grid.
  std::vector<Hypothesis> grid;
  for (int i = 0; i <= 10; ++i)
    grid.push_back(Hypothesis::make_threshold(i / 10.0));
  const auto report = evaluate_error(g, uni, &grid);
  CHECK_FALSE(report.exact);
  CHECK(report.grid_size == 11);
  CHECK(report.value <= evaluate_error(g, uni).value + 1e-12);
}

TEST_CASE("error decomposition in oracle mode") {
  const auto cls = HypothesisClass::all_thresholds(0.0, 1.0);
  const auto uni = Distribution::uniform(0.0, 1.0);
  Rng rng(808);
  const auto x = uni.sample_many(5000, rng);
  const auto w = uni.sample_many(60, rng);
  ReleaseOptions opts;
  opts.noise_off = true;
  const auto g = pap_release(x, w, cls, 0.1, 0.1, 1.0, 1e-5, rng, opts);

  // Mean defect of the cover plus the released answers' defect on the
  // representatives bounds the total error (triangle inequality).
  const double cover_defect =
      2.0 * worst_projection_disagreement(g.cover, uni);
  double pmw_defect = 0.0;
  for (std::size_t k = 0; k < g.cover.representatives.size(); ++k)
    pmw_defect = std::max(
        pmw_defect,
        std::abs(g.answers[k] - true_mean(uni, g.cover.representatives[k])));
  CHECK(evaluate_error(g, uni).value <= cover_defect + pmw_defect + 1e-9);
}

TEST_CASE("the private dataset cannot influence the cover") {
  const auto cls = HypothesisClass::all_thresholds(0.0, 1.0);
  const auto uni = Distribution::uniform(0.0, 1.0);
  Rng rng(99);
  const auto w = uni.sample_many(30, rng);
  const auto x1 = uni.sample_many(500, rng);
  std::vector<DomainPoint> x2(500, DomainPoint{0.123});

  Rng r1(7), r2(7);
  const auto g1 = pap_release(x1, w, cls, 0.2, 0.1, 1.0, 1e-5, r1);
  const auto g2 = pap_release(x2, w, cls, 0.2, 0.1, 1.0, 1e-5, r2);
  const auto standalone = build_cover(cls, w);
  const std::string c1 = cover_to_json(g1.cover, PointKind::real).dump();
  CHECK(c1 == cover_to_json(g2.cover, PointKind::real).dump());
  CHECK(c1 == cover_to_json(standalone, PointKind::real).dump());
}

TEST_CASE("synthetic datasets from accurate releases pass the 2-alpha test") {
  const auto cls = HypothesisClass::all_thresholds(0.0, 1.0);
  const auto uni = Distribution::uniform(0.0, 1.0);
  Rng rng(1717);
  const auto w = uni.sample_many(50, rng);
  ReleaseStructure g = constant_release(cls, w, 0.0);
  for (std::size_t k = 0; k < g.cover.representatives.size(); ++k)
    g.answers[k] = std::clamp(
        true_mean(uni, g.cover.representatives[k]), -1.0, 1.0);

  const double alpha = 0.2;
  const auto v = structure_to_synthetic(g, uni, alpha, rng);
  REQUIRE(v.has_value());
  CHECK(v->size() == 26);  // ceil(vc / alpha^2) + 1
  CHECK(evaluate_error(g, Distribution::empirical(*v)).value <= 2.0 * alpha);
}

TEST_CASE("synthetic extraction from a point mass is immediate") {
  const auto cls = HypothesisClass::all_thresholds(0.0, 1.0);
  const auto mass = Distribution::discrete({DomainPoint{0.3}}, {1.0});
  Rng rng(11);
  const auto x = mass.sample_many(40, rng);
  ReleaseOptions opts;
  opts.noise_off = true;
  const auto g = pap_release(x, x, cls, 0.2, 0.1, 1.0, 1e-5, rng, opts);
  const auto v = structure_to_synthetic(g, mass, 0.2, rng);
  REQUIRE(v.has_value());
  CHECK(evaluate_error(g, Distribution::empirical(*v)).value ==
        doctest::Approx(0.0));
}

TEST_CASE("synthetic extraction reports failure for unrealizable targets") {
  // A release answering 0 everywhere cannot be matched: cutoffs below every
  // candidate point force an empirical mean of -1.
  const auto cls = HypothesisClass::all_thresholds(0.0, 1.0);
  const auto uni = Distribution::uniform(0.0, 1.0);
  Rng rng(23);
  const auto w = uni.sample_many(20, rng);
  const auto g = constant_release(cls, w, 0.0);
  SyntheticOptions opts;
  opts.max_attempts = 3;
  const auto v = structure_to_synthetic(g, uni, 0.01, rng, opts);
  CHECK_FALSE(v.has_value());
}

TEST_CASE("release structures round-trip through JSON") {
  const auto cls = HypothesisClass::all_thresholds(0.0, 1.0);
  const auto uni = Distribution::uniform(0.0, 1.0);
  Rng rng(5005);
  const auto x = uni.sample_many(2000, rng);
  const auto w = uni.sample_many(25, rng);
  const auto g = pap_release(x, w, cls, 0.2, 0.1, 1.0, 1e-5, rng);

  const Json doc = release_to_json(g);
  const ReleaseStructure back = release_from_json(doc);
  CHECK(back.answers == g.answers);
  CHECK(back.budget_exhausted == g.budget_exhausted);
  for (double t : {-0.5, 0.2, 0.33, 0.71, 1.4}) {
    const Hypothesis h = Hypothesis::make_threshold(t);
    CHECK(query(back, h) == query(g, h));
  }
  CHECK(release_to_json(back).dump() == doc.dump());
}
