#include "papqr/cover.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace papqr {

namespace {

// Sorted distinct values of a real-valued point sequence.
std::vector<double> sorted_values(std::span<const DomainPoint> pts) {
  std::vector<double> vals;
  vals.reserve(pts.size());
  for (const DomainPoint& p : pts) vals.push_back(as_real(p));
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

// Pattern of the threshold sweep step j on T (in T order): +1 on the j
// smallest values of T.
std::vector<std::int8_t> threshold_pattern(std::span<const DomainPoint> t,
                                           const std::vector<double>& sorted,
                                           std::size_t j) {
  std::vector<std::int8_t> pat(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double v = as_real(t[i]);
    const auto rank = static_cast<std::size_t>(
        std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
    pat[i] = rank < j ? std::int8_t{1} : std::int8_t{-1};
  }
  return pat;
}

// Representative cutoff for sweep step j: tails sit one unit outside the
// sorted endpoints, interior steps at the midpoint of [u_{j-1}, u_j).
double representative_cutoff(const std::vector<double>& sorted,
                             std::size_t j) {
  if (j == 0) return sorted.front() - 1.0;
  if (j == sorted.size()) return sorted.back() + 1.0;
  return 0.5 * (sorted[j - 1] + sorted[j]);
}

}  // namespace

std::size_t CoverResult::pattern_index(const Hypothesis& h) const {
  if (h.kind == Hypothesis::Kind::threshold && !sweep_pattern.empty()) {
    const auto j = static_cast<std::size_t>(
        std::upper_bound(sweep_values.begin(), sweep_values.end(), h.cutoff) -
        sweep_values.begin());
    return sweep_pattern[j];
  }
  const auto sig = signature(h, std::span<const DomainPoint>(public_points));
  const auto it = pattern_lookup.find(sig);
  if (it == pattern_lookup.end())
    throw DomainMismatchError(
        "pattern_index: hypothesis realizes no pattern of this cover");
  return it->second;
}

std::vector<std::vector<std::int8_t>> projection_patterns(
    const HypothesisClass& cls, std::span<const DomainPoint> t_points) {
  std::vector<std::vector<std::int8_t>> out;
  if (t_points.empty()) {
    out.emplace_back();  // every hypothesis has the empty signature
    return out;
  }
  std::set<std::vector<std::int8_t>> seen;
  auto push_if_new = [&](std::vector<std::int8_t> pat) {
    if (seen.insert(pat).second) out.push_back(std::move(pat));
  };
  switch (cls.kind) {
    case HypothesisClass::Kind::thresholds: {
      const auto sorted = sorted_values(t_points);
      for (std::size_t j = 0; j <= sorted.size(); ++j)
        push_if_new(threshold_pattern(t_points, sorted, j));
      break;
    }
    case HypothesisClass::Kind::stumps: {
      for (std::int32_t i = 1; i <= cls.dimension; ++i) {
        std::vector<std::int8_t> pat(t_points.size());
        for (std::size_t r = 0; r < t_points.size(); ++r) {
          const SignVector& s = as_signs(t_points[r]);
          if (s.size() != static_cast<std::size_t>(cls.dimension))
            throw DomainMismatchError("projection_patterns: point dimension");
          pat[r] = s[static_cast<std::size_t>(i - 1)];
        }
        push_if_new(std::move(pat));
      }
      break;
    }
    case HypothesisClass::Kind::finite: {
      for (const Hypothesis& h : cls.members)
        push_if_new(signature(h, t_points));
      break;
    }
  }
  return out;
}

CoverResult build_cover(const HypothesisClass& cls,
                        std::span<const DomainPoint> w) {
  CoverResult cover;
  cover.full_public_sample.assign(w.begin(), w.end());

  std::set<DomainPoint> seen_points;
  for (const DomainPoint& p : w) {
    if (seen_points.insert(p).second) cover.public_points.push_back(p);
  }
  const std::span<const DomainPoint> t(cover.public_points);

  if (t.empty()) {
    cover.patterns.emplace_back();
    switch (cls.kind) {
      case HypothesisClass::Kind::thresholds:
        cover.representatives.push_back(
            Hypothesis::make_threshold(0.5 * (cls.lo + cls.hi)));
        cover.sweep_pattern.assign(1, 0);
        break;
      case HypothesisClass::Kind::stumps:
        cover.representatives.push_back(Hypothesis::make_stump(1));
        break;
      case HypothesisClass::Kind::finite:
        cover.representatives.push_back(cls.members.front());
        break;
    }
  } else if (cls.kind == HypothesisClass::Kind::thresholds) {
    const auto sorted = sorted_values(t);
    // Threshold patterns are prefix patterns, fully determined by the sweep
    // position; materializing the vectors is quadratic in |T|, so large
    // covers keep only the sweep structure (projection uses it either way).
    const bool materialize =
        (sorted.size() + 1) * t.size() <= (std::size_t{1} << 22);
    for (std::size_t j = 0; j <= sorted.size(); ++j) {
      if (materialize) cover.patterns.push_back(threshold_pattern(t, sorted, j));
      cover.representatives.push_back(
          Hypothesis::make_threshold(representative_cutoff(sorted, j)));
      cover.sweep_pattern.push_back(j);
    }
    cover.sweep_values = sorted;
  } else {
    // Stumps and finite classes: walk members in declaration order, keeping
    // the first hypothesis realizing each new pattern.
    std::set<std::vector<std::int8_t>> seen;
    auto consider = [&](const Hypothesis& h) {
      auto sig = signature(h, t);
      if (seen.insert(sig).second) {
        cover.patterns.push_back(std::move(sig));
        cover.representatives.push_back(h);
      }
    };
    if (cls.kind == HypothesisClass::Kind::stumps) {
      for (std::int32_t i = 1; i <= cls.dimension; ++i)
        consider(Hypothesis::make_stump(i));
    } else {
      for (const Hypothesis& h : cls.members) consider(h);
    }
  }

  for (std::size_t k = 0; k < cover.patterns.size(); ++k)
    cover.pattern_lookup.emplace(cover.patterns[k], k);
  return cover;
}

const Hypothesis& project(const CoverResult& cover, const Hypothesis& h) {
  return cover.representatives[cover.pattern_index(h)];
}

double public_sample_size_raw(int d, double alpha, double beta,
                              double c_cover) {
  if (d < 1) throw std::invalid_argument("public_sample_size: d must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("public_sample_size: alpha must be in (0,1)");
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("public_sample_size: beta must be in (0,1)");
  if (!(c_cover > 0.0))
    throw std::invalid_argument("public_sample_size: c_cover must be > 0");
  return c_cover * (d * std::log(1.0 / alpha) + std::log(1.0 / beta)) / alpha;
}

std::int64_t public_sample_size(int d, double alpha, double beta,
                                double c_cover) {
  return static_cast<std::int64_t>(
      std::ceil(public_sample_size_raw(d, alpha, beta, c_cover)));
}

double worst_projection_disagreement(const CoverResult& cover,
                                     const Distribution& d) {
  // CDF and its left limit for the supported real-valued distributions.
  std::vector<double> atom_vals;
  std::vector<double> atom_cdf;
  if (d.kind == Distribution::Kind::discrete) {
    std::vector<std::pair<double, double>> vw;
    vw.reserve(d.atoms.size());
    for (std::size_t k = 0; k < d.atoms.size(); ++k)
      vw.emplace_back(as_real(d.atoms[k]), d.weights[k]);
    std::sort(vw.begin(), vw.end());
    double acc = 0.0;
    for (const auto& [v, wgt] : vw) {
      acc += wgt;
      if (!atom_vals.empty() && atom_vals.back() == v) {
        atom_cdf.back() = acc;
      } else {
        atom_vals.push_back(v);
        atom_cdf.push_back(acc);
      }
    }
  } else if (d.kind != Distribution::Kind::uniform_interval) {
    throw UnsupportedError(
        "worst_projection_disagreement: real-valued distributions only");
  }
  auto cdf = [&](double x) -> double {
    if (d.kind == Distribution::Kind::uniform_interval)
      return std::clamp((x - d.lo) / (d.hi - d.lo), 0.0, 1.0);
    const auto it = std::upper_bound(atom_vals.begin(), atom_vals.end(), x);
    return it == atom_vals.begin() ? 0.0 : atom_cdf[it - atom_vals.begin() - 1];
  };
  auto cdf_left = [&](double x) -> double {
    if (d.kind == Distribution::Kind::uniform_interval) return cdf(x);
    const auto it = std::lower_bound(atom_vals.begin(), atom_vals.end(), x);
    return it == atom_vals.begin() ? 0.0 : atom_cdf[it - atom_vals.begin() - 1];
  };

  const auto sorted = sorted_values(cover.public_points);
  const std::span<const DomainPoint> t(cover.public_points);
  double worst = 0.0;
  for (std::size_t j = 0; j <= sorted.size(); ++j) {
    std::size_t id;
    if (!cover.sweep_pattern.empty()) {
      id = cover.sweep_pattern[j];
    } else {
      std::vector<std::int8_t> pat =
          t.empty() ? std::vector<std::int8_t>{}
                    : threshold_pattern(t, sorted, j);
      const auto it = cover.pattern_lookup.find(pat);
      if (it == cover.pattern_lookup.end())
        throw DomainMismatchError(
            "worst_projection_disagreement: cover is not a threshold cover");
      id = it->second;
    }
    const Hypothesis& rep = cover.representatives[id];
    if (rep.kind != Hypothesis::Kind::threshold)
      throw UnsupportedError(
          "worst_projection_disagreement: thresholds only");
    const double fm = cdf(rep.cutoff);
    // Cutoffs in [u_j, u_{j+1}) realize this pattern; the disagreement mass
    // against the representative is |F(t) - F(m)|, maximized at the ends.
    const double flo = j == 0 ? 0.0 : cdf(sorted[j - 1]);
    const double fhi = j == sorted.size() ? 1.0 : cdf_left(sorted[j]);
    worst = std::max({worst, fm - flo, fhi - fm});
  }
  return worst;
}

}  // namespace papqr
