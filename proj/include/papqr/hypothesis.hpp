#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "papqr/domain.hpp"

namespace papqr {

// A single binary query. Threshold queries answer +1 iff x <= cutoff (ties at
// the cutoff are +1). Stump queries return coordinate i of a sign vector
// (1-based). Table queries carry an explicit label per finite-domain element.
struct Hypothesis {
  enum class Kind : std::uint8_t { threshold, stump, table };

  Kind kind = Kind::threshold;
  double cutoff = 0.0;
  std::int32_t coordinate = 0;  // 1-based stump index
  std::vector<std::int8_t> labels;

  static Hypothesis make_threshold(double t);
  static Hypothesis make_stump(std::int32_t i);
  static Hypothesis make_table(std::vector<std::int8_t> labels);
};

std::int8_t evaluate(const Hypothesis& h, const DomainPoint& x);

// The label vector (h(p_1), ..., h(p_k)); empty input yields the empty vector.
std::vector<std::int8_t> signature(const Hypothesis& h,
                                   std::span<const DomainPoint> points);

// A family of binary queries over a shared domain.
//
// `vc` and `dual_vc` are declared metadata: analytic for the built-in kinds,
// caller-supplied (or brute-forced by the oracles in vc.hpp) for finite
// classes. They are not recomputed at construction time.
struct HypothesisClass {
  enum class Kind : std::uint8_t { thresholds, stumps, finite };

  Kind kind = Kind::thresholds;

  // thresholds: declared data interval [lo, hi]; cutoffs themselves range
  // over all of R, so the all-(+1) and all-(-1) behaviors are included.
  double lo = 0.0;
  double hi = 1.0;

  // stumps: dimension p of the hypercube {+1,-1}^p.
  std::int32_t dimension = 0;

  // finite: element ids 0..domain_size-1 plus an explicit member list.
  std::int32_t domain_size = 0;
  std::vector<Hypothesis> members;

  int vc = 1;
  int dual_vc = 1;

  static HypothesisClass all_thresholds(double lo, double hi);
  static HypothesisClass all_stumps(std::int32_t p);
  // Validates that member tables match domain_size and that no two members
  // share the same label behavior. Declared dimensions default to 1 when not
  // given; use compute_vc/compute_dual_vc to obtain exact values.
  static HypothesisClass finite_class(std::int32_t domain_size,
                                      std::vector<Hypothesis> members,
                                      int declared_vc = 1,
                                      int declared_dual_vc = 1);

  // All points of a declared finite domain, in id order.
  std::vector<DomainPoint> finite_domain_points() const;
};

}  // namespace papqr
