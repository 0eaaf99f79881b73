#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "papqr/cover.hpp"
#include "papqr/distribution.hpp"
#include "papqr/pmw.hpp"
#include "papqr/repdomain.hpp"

namespace papqr {

// The query-release data structure: answers for the cover's patterns plus
// the projection map, so G(h) = answers[pattern of h] is total on the class.
struct ReleaseStructure {
  HypothesisClass cls;
  CoverResult cover;
  std::vector<double> answers;  // per pattern id, in [-1, 1]
  bool budget_exhausted = false;
  std::int64_t rep_domain_size = 0;
  int pmw_updates = 0;
};

struct ReleaseOptions {
  bool noise_off = false;
  int max_paid_updates = 128;
  RepDomainOptions rep;
};

// Cover from the public sample, representative-domain reduction of the
// private sample, PMW at (alpha/2, beta/2, eps, delta) over the reduced
// pair, and the pattern-indexed release. Differentially private in the
// private sample for every fixed public sample.
ReleaseStructure pap_release(std::span<const DomainPoint> private_data,
                             std::span<const DomainPoint> public_data,
                             const HypothesisClass& cls, double alpha,
                             double beta, double eps, double delta, Rng& rng,
                             const ReleaseOptions& opts = {});

double query(const ReleaseStructure& g, const Hypothesis& h);

struct SampleSizes {
  std::int64_t private_n = 0;
  std::int64_t public_m = 0;
};

// n = ceil(c_n (d ln(1/a) + ln(1/b))^{3/2} sqrt(p ln(1/delta)) / (eps a^2)),
// m = ceil(c_m (d ln(1/a) + ln(1/b)) / a). With dual_from_vc, p is replaced
// by 2^(d+1), the worst-case dual dimension bound.
SampleSizes release_sample_bounds(int d, std::int64_t p, double alpha,
                                  double beta, double eps, double delta,
                                  double c_n = 1.0, double c_m = 1.0,
                                  bool dual_from_vc = false);
double release_private_bound_raw(int d, std::int64_t p, double alpha,
                                 double beta, double eps, double delta,
                                 double c_n = 1.0);
double release_public_bound_raw(int d, double alpha, double beta,
                                double c_m = 1.0);

struct ErrorReport {
  double value = 0.0;
  bool exact = true;
  std::size_t grid_size = 0;  // nonzero when a query grid was used
};

// Worst-case error sup_h |G(h) - E_D h|. Exact for thresholds under
// uniform/discrete real distributions (interval sweep over the pattern
// breakpoints), stumps under product/discrete sign distributions, and finite
// classes under discrete distributions. Otherwise a query grid is required.
ErrorReport evaluate_error(const ReleaseStructure& g, const Distribution& d,
                           const std::vector<Hypothesis>* grid = nullptr);

struct SyntheticOptions {
  int max_attempts = 200;
};

// Finds a dataset of size ceil(vc/alpha^2) + 1 whose empirical means match G
// within 2 alpha on every query, by repeated sampling from `sampler` and
// exact testing. Returns nullopt when the attempt cap is exhausted.
std::optional<std::vector<DomainPoint>> structure_to_synthetic(
    const ReleaseStructure& g, const Distribution& sampler, double alpha,
    Rng& rng, const SyntheticOptions& opts = {});

}  // namespace papqr
