#pragma once

#include <compare>
#include <cstdint>
#include <variant>
#include <vector>

#include "papqr/errors.hpp"

namespace papqr {

// Entries are +1 or -1.
using SignVector = std::vector<std::int8_t>;

// Abstract element of a declared finite domain (ids 0..q-1).
struct ElementId {
  std::int32_t value = 0;
  auto operator<=>(const ElementId&) const = default;
};

// A domain point is one of: a real scalar (threshold classes), a sign vector
// (hypercube classes), or an element of a declared finite domain.
using DomainPoint = std::variant<double, SignVector, ElementId>;

enum class PointKind { real, signs, element };

inline PointKind point_kind(const DomainPoint& x) {
  return static_cast<PointKind>(x.index());
}

inline double as_real(const DomainPoint& x) {
  if (const double* v = std::get_if<double>(&x)) return *v;
  throw DomainMismatchError("expected a real-valued domain point");
}

inline const SignVector& as_signs(const DomainPoint& x) {
  if (const SignVector* v = std::get_if<SignVector>(&x)) return *v;
  throw DomainMismatchError("expected a sign-vector domain point");
}

inline std::int32_t as_element(const DomainPoint& x) {
  if (const ElementId* v = std::get_if<ElementId>(&x)) return v->value;
  throw DomainMismatchError("expected a finite-domain element point");
}

inline void validate_signs(const SignVector& s) {
  for (std::int8_t v : s) {
    if (v != 1 && v != -1)
      throw DomainMismatchError("sign-vector entries must be +1 or -1");
  }
}

}  // namespace papqr
