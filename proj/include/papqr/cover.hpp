#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "papqr/distribution.hpp"
#include "papqr/hypothesis.hpp"

namespace papqr {

// The finite class selected from the projection patterns of a public sample:
// one representative hypothesis per distinct label vector on the deduplicated
// points. Immutable after construction; lookups are safe concurrently.
struct CoverResult {
  std::vector<DomainPoint> public_points;        // T: deduplicated, first-occurrence order
  std::vector<std::vector<std::int8_t>> patterns;  // distinct label vectors on T
  std::vector<Hypothesis> representatives;         // aligned with patterns
  std::vector<DomainPoint> full_public_sample;     // original w, duplicates kept

  // Index of the pattern equal to signature(h, public_points).
  // Throws DomainMismatchError when h realizes no stored pattern.
  std::size_t pattern_index(const Hypothesis& h) const;

  std::map<std::vector<std::int8_t>, std::size_t> pattern_lookup;

  // Threshold covers only: sorted distinct public values plus the pattern id
  // of each sweep position j (cutoffs in [u_j, u_{j+1})), so projection is a
  // binary search instead of a signature computation.
  std::vector<double> sweep_values;
  std::vector<std::size_t> sweep_pattern;
};

// Distinct rows {signature(h, T) : h in class}, in sweep/declaration order.
// Thresholds use an analytic sweep over sorted T (at most |T|+1 patterns),
// stumps read columns of the point matrix, finite classes enumerate members.
std::vector<std::vector<std::int8_t>> projection_patterns(
    const HypothesisClass& cls, std::span<const DomainPoint> t_points);

// Builds the cover of `cls` from the public sample w. Representative choice
// is deterministic: threshold representatives sit at the midpoint of the
// realizing cutoff interval (tail patterns use the sorted endpoint -/+ 1),
// stump and finite representatives are the first member realizing the
// pattern in declaration order.
CoverResult build_cover(const HypothesisClass& cls,
                        std::span<const DomainPoint> w);

// The representative sharing h's pattern on the public points.
const Hypothesis& project(const CoverResult& cover, const Hypothesis& h);

// ceil(c_cover * (d ln(1/alpha) + ln(1/beta)) / alpha); raw variant returns
// the value before the ceiling.
std::int64_t public_sample_size(int d, double alpha, double beta,
                                double c_cover);
double public_sample_size_raw(int d, double alpha, double beta,
                              double c_cover);

// Exact sup over all thresholds h of Pr_x[h(x) != project(h)(x)] for a
// threshold cover under a uniform-interval or discrete-over-reals
// distribution, computed by interval arithmetic over the pattern structure.
double worst_projection_disagreement(const CoverResult& cover,
                                     const Distribution& d);

}  // namespace papqr
