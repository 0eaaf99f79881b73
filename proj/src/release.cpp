#include "papqr/release.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace papqr {

ReleaseStructure pap_release(std::span<const DomainPoint> private_data,
                             std::span<const DomainPoint> public_data,
                             const HypothesisClass& cls, double alpha,
                             double beta, double eps, double delta, Rng& rng,
                             const ReleaseOptions& opts) {
  if (private_data.empty())
    throw std::invalid_argument("pap_release: empty private dataset");
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("pap_release: alpha and beta must lie in (0,1)");

  ReleaseStructure g;
  g.cls = cls;
  g.cover = build_cover(cls, public_data);
  const RepresentativeDomain rep =
      build_representative_domain(g.cover, cls, opts.rep);
  const std::vector<std::int32_t> reduced = map_dataset(rep, private_data);

  PmwConfig cfg;
  cfg.alpha = alpha / 2.0;
  cfg.beta = beta / 2.0;
  cfg.eps = eps;
  cfg.delta = delta;
  cfg.noise_off = opts.noise_off;
  cfg.max_paid_updates = opts.max_paid_updates;
  const PmwResult pmw =
      pmw_release(rep.representatives, reduced, g.cover.representatives, cfg,
                  rng);

  g.answers = pmw.answers;
  g.budget_exhausted = pmw.budget_exhausted;
  g.rep_domain_size = static_cast<std::int64_t>(rep.representatives.size());
  g.pmw_updates = pmw.updates_used;
  return g;
}

double query(const ReleaseStructure& g, const Hypothesis& h) {
  return g.answers[g.cover.pattern_index(h)];
}

double release_private_bound_raw(int d, std::int64_t p, double alpha,
                                 double beta, double eps, double delta,
                                 double c_n) {
  if (d < 1 || p < 1)
    throw std::invalid_argument("release_sample_bounds: d and p must be >= 1");
  for (double v : {alpha, beta, delta}) {
    if (!(v > 0.0 && v < 1.0))
      throw std::invalid_argument("release_sample_bounds: parameters in (0,1)");
  }
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("release_sample_bounds: eps must be in (0,1]");
  if (!(c_n > 0.0)) throw std::invalid_argument("release_sample_bounds: c_n > 0");
  const double load = d * std::log(1.0 / alpha) + std::log(1.0 / beta);
  return c_n * std::pow(load, 1.5) *
         std::sqrt(static_cast<double>(p) * std::log(1.0 / delta)) /
         (eps * alpha * alpha);
}

double release_public_bound_raw(int d, double alpha, double beta,
                                double c_m) {
  if (d < 1) throw std::invalid_argument("release_sample_bounds: d must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0) || !(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("release_sample_bounds: parameters in (0,1)");
  if (!(c_m > 0.0)) throw std::invalid_argument("release_sample_bounds: c_m > 0");
  return c_m * (d * std::log(1.0 / alpha) + std::log(1.0 / beta)) / alpha;
}

SampleSizes release_sample_bounds(int d, std::int64_t p, double alpha,
                                  double beta, double eps, double delta,
                                  double c_n, double c_m, bool dual_from_vc) {
  std::int64_t dual = p;
  if (dual_from_vc) {
    if (d > 60) throw SizeLimitError("release_sample_bounds: 2^(d+1) overflows");
    dual = std::int64_t{1} << (d + 1);
  }
  SampleSizes s;
  s.private_n = static_cast<std::int64_t>(
      std::ceil(release_private_bound_raw(d, dual, alpha, beta, eps, delta, c_n)));
  s.public_m = static_cast<std::int64_t>(
      std::ceil(release_public_bound_raw(d, alpha, beta, c_m)));
  return s;
}

namespace {

// Exact sup over all threshold cutoffs of |G(h_t) - (2 F(t) - 1)|.
double threshold_error(const ReleaseStructure& g, const Distribution& d) {
  std::vector<double> breaks;
  for (const DomainPoint& p : g.cover.public_points)
    breaks.push_back(as_real(p));
  const bool discrete = d.kind == Distribution::Kind::discrete;
  if (discrete) {
    for (const DomainPoint& a : d.atoms) breaks.push_back(as_real(a));
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  auto mean_at = [&](double t) {
    return true_mean(d, Hypothesis::make_threshold(t));
  };
  auto release_at = [&](double t) {
    return query(g, Hypothesis::make_threshold(t));
  };

  if (breaks.empty()) {
    // Single pattern; the released value is constant while the true mean
    // spans [-1, 1].
    const double v = release_at(0.0);
    return std::max(std::abs(v - 1.0), std::abs(v + 1.0));
  }

  double worst = 0.0;
  if (discrete) {
    // Both t -> G(h_t) and t -> E h_t are right-continuous step functions
    // with jumps inside `breaks`; checking each piece's left endpoint (and a
    // point below the first) covers every value pair exactly.
    double t = breaks.front() - 1.0;
    worst = std::abs(release_at(t) - mean_at(t));
    for (double b : breaks)
      worst = std::max(worst, std::abs(release_at(b) - mean_at(b)));
  } else {
    // Uniform interval: G is a step function with jumps at the public
    // points, the true mean is continuous and monotone, so each piece
    // attains its sup at one of its ends.
    for (std::size_t j = 0; j <= breaks.size(); ++j) {
      const double lo_mean = j == 0 ? -1.0 : mean_at(breaks[j - 1]);
      const double hi_mean = j == breaks.size() ? 1.0 : mean_at(breaks[j]);
      double inside;
      if (j == 0) {
        inside = breaks.front() - 1.0;
      } else if (j == breaks.size()) {
        inside = breaks.back() + 1.0;
      } else {
        inside = 0.5 * (breaks[j - 1] + breaks[j]);
      }
      const double v = release_at(inside);
      worst = std::max({worst, std::abs(v - lo_mean), std::abs(v - hi_mean)});
    }
  }
  return worst;
}

double stump_error(const ReleaseStructure& g, const Distribution& d) {
  double worst = 0.0;
  for (std::int32_t i = 1; i <= g.cls.dimension; ++i) {
    const Hypothesis h = Hypothesis::make_stump(i);
    worst = std::max(worst, std::abs(query(g, h) - true_mean(d, h)));
  }
  return worst;
}

double finite_error(const ReleaseStructure& g, const Distribution& d) {
  double worst = 0.0;
  for (const Hypothesis& h : g.cls.members)
    worst = std::max(worst, std::abs(query(g, h) - true_mean(d, h)));
  return worst;
}

}  // namespace

ErrorReport evaluate_error(const ReleaseStructure& g, const Distribution& d,
                           const std::vector<Hypothesis>* grid) {
  ErrorReport report;
  if (grid != nullptr) {
    if (grid->empty())
      throw std::invalid_argument("evaluate_error: empty query grid");
    double worst = 0.0;
    for (const Hypothesis& h : *grid)
      worst = std::max(worst, std::abs(query(g, h) - true_mean(d, h)));
    report.value = worst;
    report.exact = false;
    report.grid_size = grid->size();
    return report;
  }
  switch (g.cls.kind) {
    case HypothesisClass::Kind::thresholds:
      report.value = threshold_error(g, d);
      return report;
    case HypothesisClass::Kind::stumps:
      if (d.kind == Distribution::Kind::uniform_interval)
        throw UnsupportedError("evaluate_error: no exact method; pass a grid");
      report.value = stump_error(g, d);
      return report;
    case HypothesisClass::Kind::finite:
      report.value = finite_error(g, d);
      return report;
  }
  throw std::logic_error("unreachable class kind");
}

std::optional<std::vector<DomainPoint>> structure_to_synthetic(
    const ReleaseStructure& g, const Distribution& sampler, double alpha,
    Rng& rng, const SyntheticOptions& opts) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("structure_to_synthetic: alpha in (0,1)");
  const int vc = std::max(1, g.cls.vc);
  const auto size = static_cast<std::size_t>(
      std::ceil(static_cast<double>(vc) / (alpha * alpha))) + 1;
  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    std::vector<DomainPoint> candidate = sampler.sample_many(size, rng);
    const Distribution empirical = Distribution::empirical(candidate);
    // Empirical means against the release, exactly: the same sup machinery
    // with the candidate's empirical distribution plugged in.
    if (evaluate_error(g, empirical).value <= 2.0 * alpha) return candidate;
  }
  return std::nullopt;
}

}  // namespace papqr
