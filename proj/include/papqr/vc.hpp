#pragma once

#include <span>

#include "papqr/hypothesis.hpp"

namespace papqr {

// Exact VC dimension of the class restricted to the given finite domain,
// by exhaustive shattering search. Requires |domain| <= 20.
int compute_vc(const HypothesisClass& cls, std::span<const DomainPoint> domain);

// Exact dual VC dimension: the same search on the transposed label matrix
// (points acting on the class's distinct behaviors). Requires |domain| <= 20
// and at most 4096 distinct behaviors on the domain.
int compute_dual_vc(const HypothesisClass& cls,
                    std::span<const DomainPoint> domain);

// Sauer-Shelah growth bound (e*m/d)^d, with the d = 0 case equal to 1.
// Callers should only apply it for m >= d.
double sauer_bound(std::size_t m, int d);

}  // namespace papqr
