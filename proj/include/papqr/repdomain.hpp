#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "papqr/cover.hpp"
#include "papqr/hypothesis.hpp"

namespace papqr {

// One representative point per equivalence class of "all cover hypotheses
// agree". Immutable after construction; locate() is pure.
struct RepresentativeDomain {
  std::vector<DomainPoint> representatives;

  // Index into representatives of the class containing x.
  std::size_t locate(const DomainPoint& x) const;

  // Internal locator data, one of the three layouts below.
  HypothesisClass::Kind kind = HypothesisClass::Kind::thresholds;
  std::vector<double> cutoffs;        // thresholds: sorted distinct cutoffs
  std::vector<std::int32_t> coords;   // stumps: sorted queried coordinates (1-based)
  std::int32_t dimension = 0;         // stumps: ambient p
  std::vector<std::int32_t> element_to_rep;  // finite: id -> representative index
};

struct RepDomainOptions {
  // Refuse stump domains needing more than 2^max_bits representatives.
  int max_bits = 20;
};

// Builds the representative domain induced by the cover's hypothesis set on
// the class's declared domain. Deterministic representative choices: interval
// midpoints (tails one unit outside) for thresholds, +1-padded sign vectors
// enumerated over the queried coordinates for stumps, first point per
// signature in id order for finite domains.
RepresentativeDomain build_representative_domain(
    const CoverResult& cover, const HypothesisClass& cls,
    const RepDomainOptions& opts = {});

// Elementwise locate(); length and order preserved.
std::vector<std::int32_t> map_dataset(const RepresentativeDomain& rep,
                                      std::span<const DomainPoint> points);

}  // namespace papqr
