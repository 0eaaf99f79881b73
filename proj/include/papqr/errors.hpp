#pragma once

#include <stdexcept>
#include <string>

namespace papqr {

// Caller passed a point or hypothesis that does not live in the expected domain.
struct DomainMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A construction would exceed a configured size cap (e.g. representative
// domains larger than 2^20, brute-force oracles beyond their limits).
struct SizeLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An operation was asked for an unsupported combination (e.g. a closed-form
// mean for a (distribution, hypothesis) pairing that has none).
struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace papqr
