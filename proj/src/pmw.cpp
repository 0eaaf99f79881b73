#include "papqr/pmw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "papqr/errors.hpp"

namespace papqr {

double laplace(double scale, Rng& rng) {
  if (!(scale > 0.0)) throw std::invalid_argument("laplace: scale must be > 0");
  const double u = rng.uniform01() - 0.5;  // in (-1/2, 1/2)
  return u < 0.0 ? scale * std::log1p(2.0 * u) : -scale * std::log1p(-2.0 * u);
}

double per_release_epsilon(double eps, double delta, int releases) {
  if (releases <= 0) throw std::invalid_argument("per_release_epsilon: k >= 1");
  if (releases == 1) return eps;
  const double basic = eps / static_cast<double>(releases);
  // Advanced composition: k releases of eps0 give
  // sqrt(2 k ln(1/delta)) eps0 + k eps0 (e^eps0 - 1) total.
  const double k = static_cast<double>(releases);
  const double lead = std::sqrt(2.0 * k * std::log(1.0 / delta));
  auto total = [&](double e0) {
    return lead * e0 + k * e0 * (std::exp(e0) - 1.0);
  };
  double lo = 0.0, hi = eps;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (total(mid) <= eps ? lo : hi) = mid;
  }
  return std::max(basic, lo);
}

namespace {

struct NoiseScales {
  double threshold = 0.0;  // Laplace scale on the comparison threshold
  double query = 0.0;      // Laplace scale on each comparison
  double answer = 0.0;     // Laplace scale on each released answer
};

// Each paid event spends one above-threshold epoch and one numeric answer,
// both pure eps0-DP at sensitivity 2/n (counting queries under replacement).
NoiseScales calibrate(double eps, double delta, int paid_events,
                      std::size_t n) {
  const double eps0 = per_release_epsilon(eps, delta, 2 * paid_events);
  const double sens = 2.0 / static_cast<double>(n);
  NoiseScales s;
  s.threshold = 2.0 * sens / eps0;
  s.query = 4.0 * sens / eps0;
  s.answer = sens / eps0;
  return s;
}

}  // namespace

PmwResult pmw_release(std::span<const DomainPoint> domain,
                      std::span<const std::int32_t> data,
                      std::span<const Hypothesis> queries,
                      const PmwConfig& cfg, Rng& rng) {
  const std::size_t domain_size = domain.size();
  if (domain_size == 0)
    throw std::invalid_argument("pmw_release: empty domain");
  if (data.empty()) throw std::invalid_argument("pmw_release: empty dataset");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
    throw std::invalid_argument("pmw_release: alpha must be in (0,1)");
  if (!(cfg.beta > 0.0 && cfg.beta < 1.0))
    throw std::invalid_argument("pmw_release: beta must be in (0,1)");
  if (!cfg.noise_off) {
    if (!(cfg.eps > 0.0 && cfg.eps <= 1.0))
      throw std::invalid_argument("pmw_release: eps must be in (0,1]");
    if (!(cfg.delta > 0.0 && cfg.delta < 1.0))
      throw std::invalid_argument("pmw_release: delta must be in (0,1)");
  }

  const double eta =
      cfg.learning_rate > 0.0 ? cfg.learning_rate : cfg.alpha / 4.0;
  const double threshold =
      cfg.svt_threshold > 0.0 ? cfg.svt_threshold : cfg.alpha / 2.0;
  if (!(eta > 0.0 && eta < 1.0))
    throw std::invalid_argument("pmw_release: learning rate outside (0,1)");
  if (!(threshold > 0.0 && threshold < 1.0))
    throw std::invalid_argument("pmw_release: svt threshold outside (0,1)");
  if (cfg.update_budget < 0)
    throw std::invalid_argument("pmw_release: update budget must be >= 1");
  const int capacity =
      cfg.update_budget > 0
          ? cfg.update_budget
          : static_cast<int>(std::ceil(
                16.0 * std::log(static_cast<double>(domain_size)) /
                (cfg.alpha * cfg.alpha)));

  // A single pass can pay for at most one event per query; in noisy mode the
  // configured cap bounds the count further, and the noise scales below are
  // calibrated for that bound.
  int paid_cap = std::max(1, std::min<int>(capacity,
                                           static_cast<int>(queries.size())));
  if (!cfg.noise_off)
    paid_cap = std::max(1, std::min(paid_cap, cfg.max_paid_updates));

  NoiseScales scales;
  if (!cfg.noise_off && !queries.empty())
    scales = calibrate(cfg.eps, cfg.delta, paid_cap, data.size());

  const std::size_t n = data.size();
  std::vector<double> counts(domain_size, 0.0);
  for (std::int32_t idx : data) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= domain_size)
      throw DomainMismatchError("pmw_release: data index outside the domain");
    counts[static_cast<std::size_t>(idx)] += 1.0;
  }

  std::vector<double> weights(domain_size, 1.0 / static_cast<double>(domain_size));

  // Fast path for threshold queries over a real domain: dataset and
  // synthetic answers come from prefix sums over the value-sorted domain,
  // and updates touch a prefix/suffix split. Semantically identical to the
  // generic path.
  const bool all_real = std::all_of(
      domain.begin(), domain.end(),
      [](const DomainPoint& p) { return point_kind(p) == PointKind::real; });
  const bool all_thresh = std::all_of(
      queries.begin(), queries.end(), [](const Hypothesis& h) {
        return h.kind == Hypothesis::Kind::threshold;
      });
  const bool fast = all_real && all_thresh && domain_size >= 2;

  std::vector<std::size_t> order;        // fast path: domain sorted by value
  std::vector<double> sorted_vals;
  std::vector<double> pref_weight;       // pref[i] = sum of first i sorted weights
  std::vector<double> pref_count;
  auto rebuild_prefixes = [&]() {
    double aw = 0.0;
    for (std::size_t i = 0; i < domain_size; ++i) {
      aw += weights[order[i]];
      pref_weight[i + 1] = aw;
    }
  };
  if (fast) {
    order.resize(domain_size);
    for (std::size_t i = 0; i < domain_size; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return as_real(domain[a]) < as_real(domain[b]);
    });
    sorted_vals.resize(domain_size);
    for (std::size_t i = 0; i < domain_size; ++i)
      sorted_vals[i] = as_real(domain[order[i]]);
    pref_weight.assign(domain_size + 1, 0.0);
    pref_count.assign(domain_size + 1, 0.0);
    double ac = 0.0;
    for (std::size_t i = 0; i < domain_size; ++i) {
      ac += counts[order[i]];
      pref_count[i + 1] = ac;
    }
    rebuild_prefixes();
  }

  PmwResult res;
  res.answers.assign(queries.size(), 0.0);
  res.updated.assign(queries.size(), 0);

  std::vector<std::int8_t> labels(domain_size);
  double rho = cfg.noise_off || queries.empty()
                   ? 0.0
                   : laplace(scales.threshold, rng);
  bool halted = false;

  for (std::size_t q = 0; q < queries.size(); ++q) {
    const Hypothesis& h = queries[q];
    double data_answer, synth_answer;
    std::size_t split = 0;
    if (fast) {
      split = static_cast<std::size_t>(
          std::upper_bound(sorted_vals.begin(), sorted_vals.end(), h.cutoff) -
          sorted_vals.begin());
      data_answer = (2.0 * pref_count[split] - static_cast<double>(n)) /
                    static_cast<double>(n);
      synth_answer = 2.0 * pref_weight[split] - pref_weight[domain_size];
    } else {
      for (std::size_t u = 0; u < domain_size; ++u)
        labels[u] = evaluate(h, domain[u]);
      double a = 0.0, s = 0.0;
      for (std::size_t u = 0; u < domain_size; ++u) {
        a += counts[u] * static_cast<double>(labels[u]);
        s += weights[u] * static_cast<double>(labels[u]);
      }
      data_answer = a / static_cast<double>(n);
      synth_answer = s;
    }
    synth_answer = std::clamp(synth_answer, -1.0, 1.0);

    if (halted) {
      res.answers[q] = synth_answer;
      continue;
    }

    const double nu = cfg.noise_off ? 0.0 : laplace(scales.query, rng);
    const double gap = std::abs(data_answer - synth_answer);
    if (gap + nu > threshold + rho) {
      const double zeta = cfg.noise_off ? 0.0 : laplace(scales.answer, rng);
      const double noisy = std::clamp(data_answer + zeta, -1.0, 1.0);
      const double step = noisy >= synth_answer ? eta : -eta;
      if (fast) {
        const double up = std::exp(step);
        const double down = std::exp(-step);
        for (std::size_t i = 0; i < split; ++i) weights[order[i]] *= up;
        for (std::size_t i = split; i < domain_size; ++i)
          weights[order[i]] *= down;
      } else {
        for (std::size_t u = 0; u < domain_size; ++u)
          weights[u] *= std::exp(step * static_cast<double>(labels[u]));
      }
      double total = 0.0;
      for (double wv : weights) total += wv;
      for (double& wv : weights) wv /= total;
      if (fast) rebuild_prefixes();

      res.answers[q] = noisy;
      res.updated[q] = 1;
      ++res.updates_used;
      if (res.updates_used >= paid_cap) {
        // No budget for another epoch: remaining queries are answered from
        // the final synthetic distribution without any further comparison.
        halted = true;
        if (q + 1 < queries.size()) res.budget_exhausted = true;
      } else if (!cfg.noise_off) {
        rho = laplace(scales.threshold, rng);
      }
    } else {
      res.answers[q] = synth_answer;
    }
  }

  res.weights = std::move(weights);
  return res;
}

double required_private_samples_raw(std::int64_t size_x, std::int64_t size_h,
                                    double alpha, double beta, double eps,
                                    double delta) {
  if (size_x < 2)
    throw std::invalid_argument("required_private_samples: size_x >= 2");
  if (size_h < 1)
    throw std::invalid_argument("required_private_samples: size_h >= 1");
  for (double v : {alpha, beta, delta}) {
    if (!(v > 0.0 && v < 1.0))
      throw std::invalid_argument(
          "required_private_samples: parameters must lie in (0,1)");
  }
  if (!(eps > 0.0 && eps <= 1.0))
    throw std::invalid_argument("required_private_samples: eps must be in (0,1]");
  const double lx = std::log(static_cast<double>(size_x));
  const double lh = std::log(static_cast<double>(size_h));
  return 200.0 * std::sqrt(lx * std::log(2.0 / delta)) *
         (lh + std::log(128.0 * lx / (alpha * alpha * beta))) /
         (eps * alpha * alpha);
}

std::int64_t required_private_samples(std::int64_t size_x, std::int64_t size_h,
                                      double alpha, double beta, double eps,
                                      double delta) {
  return static_cast<std::int64_t>(std::ceil(
      required_private_samples_raw(size_x, size_h, alpha, beta, eps, delta)));
}

}  // namespace papqr
