#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "papqr/domain.hpp"
#include "papqr/hypothesis.hpp"
#include "papqr/rng.hpp"

namespace papqr {

// One draw from the zero-mean Laplace distribution with the given scale.
double laplace(double scale, Rng& rng);

// Parameters for offline private multiplicative weights. Zeros for
// update_budget, learning_rate, and svt_threshold select the defaults
// eta = alpha/4, threshold = alpha/2, budget = ceil(16 ln|X| / alpha^2).
struct PmwConfig {
  double alpha = 0.1;
  double beta = 0.05;
  double eps = 1.0;
  double delta = 1e-5;
  int update_budget = 0;
  double learning_rate = 0.0;
  double svt_threshold = 0.0;
  // Above-threshold events carry all of the privacy cost; noise is
  // calibrated for at most min(update_budget, |queries|, max_paid_updates)
  // of them. Lower values mean less noise per comparison but an earlier
  // (flagged) cutoff on adaptivity.
  int max_paid_updates = 128;
  bool noise_off = false;  // oracle mode: all noise terms are zero
};

struct PmwResult {
  std::vector<double> answers;         // one per query, in [-1, 1]
  std::vector<std::uint8_t> updated;   // 1 where an above-threshold release paid
  std::vector<double> weights;         // final synthetic distribution over the domain
  int updates_used = 0;
  bool budget_exhausted = false;       // some queries were answered without a comparison
};

// Offline PMW over a finite domain. `data` holds indices into `domain`; the
// queries are processed once, in order, with a sparse-vector comparison of
// the dataset answer against the synthetic answer. Above-threshold queries
// release a Laplace-noised dataset answer and trigger a multiplicative
// update; below-threshold queries release the synthetic answer and cost
// nothing. The whole run is (eps, delta)-differentially private in `data`
// via advanced composition over the paid events.
PmwResult pmw_release(std::span<const DomainPoint> domain,
                      std::span<const std::int32_t> data,
                      std::span<const Hypothesis> queries,
                      const PmwConfig& cfg, Rng& rng);

// Sample size from the PMW accuracy guarantee (natural logs):
// 200 sqrt(ln|X| ln(2/delta)) (ln|H| + ln(128 ln|X| / (alpha^2 beta))) / (eps alpha^2).
std::int64_t required_private_samples(std::int64_t size_x, std::int64_t size_h,
                                      double alpha, double beta, double eps,
                                      double delta);
double required_private_samples_raw(std::int64_t size_x, std::int64_t size_h,
                                    double alpha, double beta, double eps,
                                    double delta);

// Largest per-release budget eps0 such that k pure-eps0 mechanisms compose to
// (eps, delta)-DP, taking the better of basic and advanced composition.
double per_release_epsilon(double eps, double delta, int releases);

}  // namespace papqr
