#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace papqr {

// Splittable counter-based PRNG built on the splitmix64 finalizer.
//
// Every stream is fully determined by its 64-bit key, and child streams are
// derived from (key, tag) alone, independent of how many values the parent
// has produced. That makes draw sequences a pure function of the top-level
// seed and the derivation path, so worker counts and evaluation order cannot
// change results.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(mix(seed + kGamma)) {}

  // Independent stream for a fixed tag. Calling child(t) twice yields the
  // same stream; use distinct tags for distinct purposes.
  Rng child(std::uint64_t tag) const {
    return Rng(raw_key{}, mix(key_ ^ mix(tag + 0xD6E8FEB86659FD93ull)));
  }

  std::uint64_t next_u64() {
    counter_ += kGamma;
    return mix(key_ ^ counter_);
  }

  // Uniform on the open interval (0, 1); never returns an exact 0 or 1.
  double uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Uniform integer in [0, n).
  std::int64_t uniform_int(std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("uniform_int: n must be positive");
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = ~0ull - (~0ull % un + 1) % un;
    std::uint64_t x = next_u64();
    while (x > limit) x = next_u64();
    return static_cast<std::int64_t>(x % un);
  }

  // +1 with probability (1 + bias) / 2, else -1.
  std::int8_t sign_with_bias(double bias) {
    return uniform01() < 0.5 * (1.0 + bias) ? std::int8_t{1} : std::int8_t{-1};
  }

 private:
  struct raw_key {};
  Rng(raw_key, std::uint64_t key) : key_(key) {}

  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace papqr
