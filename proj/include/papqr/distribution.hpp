#pragma once

#include <cstdint>
#include <vector>

#include "papqr/domain.hpp"
#include "papqr/hypothesis.hpp"
#include "papqr/rng.hpp"

namespace papqr {

// A sampling distribution over one of the three point kinds. Immutable after
// construction; samplers take an explicit Rng so concurrent users can run on
// independent streams.
struct Distribution {
  enum class Kind : std::uint8_t { uniform_interval, discrete, product_signs };

  Kind kind = Kind::uniform_interval;

  // uniform_interval
  double lo = 0.0;
  double hi = 1.0;

  // discrete: atoms with probability weights (sum to 1 within 1e-12).
  std::vector<DomainPoint> atoms;
  std::vector<double> weights;
  std::vector<double> cdf;  // cumulative weights, same length as atoms

  // product_signs: coordinate biases in [-1, 1]; coordinate j is +1 with
  // probability (1 + biases[j]) / 2 independently.
  std::vector<double> biases;

  static Distribution uniform(double lo, double hi);
  static Distribution discrete(std::vector<DomainPoint> atoms,
                               std::vector<double> weights);
  // Uniform over the given points.
  static Distribution empirical(std::vector<DomainPoint> points);
  static Distribution product_signs_dist(std::vector<double> biases);

  DomainPoint sample(Rng& rng) const;
  std::vector<DomainPoint> sample_many(std::size_t count, Rng& rng) const;

  // Fills a raw +-1 row for product_signs without going through DomainPoint.
  void fill_signs(std::int8_t* out, Rng& rng) const;
};

// Exact E_{x~D}[h(x)] for the pairings that admit one:
// uniform x threshold, product_signs x stump, discrete x anything evaluable.
// Throws UnsupportedError otherwise; use mc_mean as the fallback.
double true_mean(const Distribution& d, const Hypothesis& h);

// Monte-Carlo estimate of E_{x~D}[h(x)].
double mc_mean(const Distribution& d, const Hypothesis& h, Rng& rng,
               std::int64_t samples = 1000000);

}  // namespace papqr
