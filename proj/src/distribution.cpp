#include "papqr/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace papqr {

Distribution Distribution::uniform(double lo, double hi) {
  if (!(lo < hi)) throw std::invalid_argument("uniform: needs lo < hi");
  Distribution d;
  d.kind = Kind::uniform_interval;
  d.lo = lo;
  d.hi = hi;
  return d;
}

Distribution Distribution::discrete(std::vector<DomainPoint> atoms,
                                    std::vector<double> weights) {
  if (atoms.empty() || atoms.size() != weights.size())
    throw std::invalid_argument("discrete: atoms/weights size mismatch");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("discrete: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("discrete: weights must sum to 1");
  Distribution d;
  d.kind = Kind::discrete;
  d.atoms = std::move(atoms);
  d.weights = std::move(weights);
  d.cdf.resize(d.weights.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < d.weights.size(); ++k) {
    acc += d.weights[k];
    d.cdf[k] = acc;
  }
  d.cdf.back() = 1.0;
  return d;
}

Distribution Distribution::empirical(std::vector<DomainPoint> points) {
  if (points.empty())
    throw std::invalid_argument("empirical: needs at least one point");
  const std::size_t n = points.size();
  // Equal weights land exactly on 1 via the cdf patch in discrete().
  std::vector<double> w(n, 1.0 / static_cast<double>(n));
  double total = 0.0;
  for (double v : w) total += v;
  w.back() += 1.0 - total;
  return discrete(std::move(points), std::move(w));
}

Distribution Distribution::product_signs_dist(std::vector<double> biases) {
  if (biases.empty())
    throw std::invalid_argument("product_signs: needs at least one coordinate");
  for (double b : biases) {
    if (!(b >= -1.0 && b <= 1.0))
      throw std::invalid_argument("product_signs: biases must lie in [-1, 1]");
  }
  Distribution d;
  d.kind = Kind::product_signs;
  d.biases = std::move(biases);
  return d;
}

DomainPoint Distribution::sample(Rng& rng) const {
  switch (kind) {
    case Kind::uniform_interval:
      return rng.uniform(lo, hi);
    case Kind::discrete: {
      const double u = rng.uniform01();
      const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
      const std::size_t k =
          it == cdf.end() ? cdf.size() - 1
                          : static_cast<std::size_t>(it - cdf.begin());
      return atoms[k];
    }
    case Kind::product_signs: {
      SignVector s(biases.size());
      fill_signs(s.data(), rng);
      return s;
    }
  }
  throw std::logic_error("unreachable distribution kind");
}

std::vector<DomainPoint> Distribution::sample_many(std::size_t count,
                                                   Rng& rng) const {
  std::vector<DomainPoint> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sample(rng));
  return out;
}

void Distribution::fill_signs(std::int8_t* out, Rng& rng) const {
  if (kind != Kind::product_signs)
    throw UnsupportedError("fill_signs: not a product distribution");
  for (std::size_t j = 0; j < biases.size(); ++j)
    out[j] = rng.sign_with_bias(biases[j]);
}

double true_mean(const Distribution& d, const Hypothesis& h) {
  switch (d.kind) {
    case Distribution::Kind::uniform_interval: {
      if (h.kind != Hypothesis::Kind::threshold)
        throw UnsupportedError("true_mean: uniform interval needs thresholds");
      // P(x <= t) = clamp((t - lo)/(hi - lo)); mean is 2 P - 1.
      const double p =
          std::clamp((h.cutoff - d.lo) / (d.hi - d.lo), 0.0, 1.0);
      return 2.0 * p - 1.0;
    }
    case Distribution::Kind::product_signs: {
      if (h.kind != Hypothesis::Kind::stump)
        throw UnsupportedError("true_mean: product distribution needs stumps");
      if (h.coordinate < 1 ||
          static_cast<std::size_t>(h.coordinate) > d.biases.size())
        throw DomainMismatchError("true_mean: stump index out of range");
      return d.biases[static_cast<std::size_t>(h.coordinate - 1)];
    }
    case Distribution::Kind::discrete: {
      double acc = 0.0;
      for (std::size_t k = 0; k < d.atoms.size(); ++k)
        acc += d.weights[k] * static_cast<double>(evaluate(h, d.atoms[k]));
      return acc;
    }
  }
  throw std::logic_error("unreachable distribution kind");
}

double mc_mean(const Distribution& d, const Hypothesis& h, Rng& rng,
               std::int64_t samples) {
  if (samples < 1) throw std::invalid_argument("mc_mean: samples must be >= 1");
  double acc = 0.0;
  for (std::int64_t i = 0; i < samples; ++i)
    acc += static_cast<double>(evaluate(h, d.sample(rng)));
  return acc / static_cast<double>(samples);
}

}  // namespace papqr
