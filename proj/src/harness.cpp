#include "papqr/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "papqr/parallel.hpp"

namespace papqr {

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::pap: return "pap";
    case Mode::public_only: return "public-only";
    case Mode::private_only: return "private-only";
  }
  return "unknown";
}

Mode mode_from_name(const std::string& s) {
  if (s == "pap") return Mode::pap;
  if (s == "public-only") return Mode::public_only;
  if (s == "private-only") return Mode::private_only;
  throw std::invalid_argument(
      "mode must be one of pap, public-only, private-only (got '" + s + "')");
}

void ExperimentSpec::validate() const {
  if (trials < 1) throw std::invalid_argument("spec.trials must be >= 1");
  if (workers < 1) throw std::invalid_argument("spec.workers must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("spec.alpha must lie in (0,1)");
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("spec.beta must lie in (0,1)");
  if (mode == Mode::public_only) {
    if (m < 1)
      throw std::invalid_argument("spec.m: public-only mode needs m >= 1");
    return;  // no privacy parameters consumed
  }
  if (!noise_off) {
    if (!(eps > 0.0 && eps <= 1.0))
      throw std::invalid_argument("spec.eps must lie in (0,1]");
    if (!(delta > 0.0 && delta < 1.0))
      throw std::invalid_argument("spec.delta must lie in (0,1)");
  }
  if (mode == Mode::pap && (n < 1 || m < 1))
    throw std::invalid_argument("spec.n and spec.m: pap mode needs both >= 1");
  if (mode == Mode::private_only && n + m < 1)
    throw std::invalid_argument("spec.n + spec.m must be >= 1");
  if (mode == Mode::private_only && (grid_bits < 1 || grid_bits > 24))
    throw std::invalid_argument("spec.grid_bits must lie in [1, 24]");
}

ReleaseStructure public_only_release(const HypothesisClass& cls,
                                     std::span<const DomainPoint> w) {
  if (w.empty())
    throw std::invalid_argument("public_only_release: empty public sample");
  ReleaseStructure g;
  g.cls = cls;
  g.cover = build_cover(cls, w);
  g.answers.reserve(g.cover.representatives.size());
  const auto count = static_cast<double>(w.size());
  if (cls.kind == HypothesisClass::Kind::thresholds) {
    std::vector<double> vals;
    vals.reserve(w.size());
    for (const DomainPoint& p : w) vals.push_back(as_real(p));
    std::sort(vals.begin(), vals.end());
    for (const Hypothesis& rep : g.cover.representatives) {
      const auto below = static_cast<double>(
          std::upper_bound(vals.begin(), vals.end(), rep.cutoff) -
          vals.begin());
      g.answers.push_back((2.0 * below - count) / count);
    }
  } else {
    for (const Hypothesis& rep : g.cover.representatives) {
      double acc = 0.0;
      for (const DomainPoint& p : w)
        acc += static_cast<double>(evaluate(rep, p));
      g.answers.push_back(acc / count);
    }
  }
  return g;
}

std::vector<DomainPoint> discretization_grid(const HypothesisClass& cls,
                                             int bits) {
  std::vector<DomainPoint> grid;
  switch (cls.kind) {
    case HypothesisClass::Kind::thresholds: {
      const std::size_t cells = std::size_t{1} << bits;
      grid.reserve(cells);
      const double width = (cls.hi - cls.lo) / static_cast<double>(cells);
      for (std::size_t i = 0; i < cells; ++i)
        grid.emplace_back(cls.lo + (static_cast<double>(i) + 0.5) * width);
      break;
    }
    case HypothesisClass::Kind::stumps: {
      // ceil(log2 p) rows whose columns carry distinct binary codes, so every
      // stump realizes its own pattern.
      int rows = 0;
      while ((std::int64_t{1} << rows) < cls.dimension) ++rows;
      rows = std::max(rows, 1);
      for (int b = 0; b < rows; ++b) {
        SignVector s(static_cast<std::size_t>(cls.dimension));
        for (std::int32_t i = 0; i < cls.dimension; ++i)
          s[static_cast<std::size_t>(i)] = (i >> b) & 1 ? -1 : 1;
        grid.emplace_back(std::move(s));
      }
      break;
    }
    case HypothesisClass::Kind::finite:
      grid = cls.finite_domain_points();
      break;
  }
  return grid;
}

std::vector<TrialRow> run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  std::vector<TrialRow> rows(static_cast<std::size_t>(spec.trials));
  const Rng base(spec.seed);
  parallel_trials(spec.trials, spec.workers, [&](int t) {
    Rng trial_rng = base.child(static_cast<std::uint64_t>(t));
    Rng data_rng = trial_rng.child(0);
    const auto x =
        spec.dist.sample_many(static_cast<std::size_t>(spec.n), data_rng);
    const auto w =
        spec.dist.sample_many(static_cast<std::size_t>(spec.m), data_rng);
    Rng mech_rng = trial_rng.child(1);

    ReleaseOptions opts;
    opts.noise_off = spec.noise_off;
    ReleaseStructure g;
    switch (spec.mode) {
      case Mode::pap:
        g = pap_release(x, w, spec.cls, spec.alpha, spec.beta, spec.eps, spec.delta,
                 mech_rng, opts);
        break;
      case Mode::public_only:
        g = public_only_release(spec.cls, w);
        break;
      case Mode::private_only: {
        // All n + m rows are treated as private; the "public" input is the
        // deterministic discretization grid, which carries no data.
        std::vector<DomainPoint> all(x.begin(), x.end());
        all.insert(all.end(), w.begin(), w.end());
        const auto grid = discretization_grid(spec.cls, spec.grid_bits);
        g = pap_release(all, grid, spec.cls, spec.alpha, spec.beta, spec.eps,
                 spec.delta, mech_rng, opts);
        break;
      }
    }
    const ErrorReport err = evaluate_error(g, spec.dist);
    TrialRow& row = rows[static_cast<std::size_t>(t)];
    row.trial = t;
    row.error = err.value;
    row.exact = err.exact;
    row.cover_patterns = g.cover.representatives.size();
    row.rep_domain_size = g.rep_domain_size;
    row.pmw_updates = g.pmw_updates;
    row.budget_exhausted = g.budget_exhausted;
  });
  return rows;
}

std::string experiment_csv(const ExperimentSpec& spec,
                           std::span<const TrialRow> rows) {
  std::string csv =
      "trial,mode,n,m,alpha,beta,eps,delta,seed,error,error_exact,"
      "cover_patterns,rep_domain_size,pmw_updates,budget_exhausted\n";
  char buf[320];
  for (const TrialRow& r : rows) {
    std::snprintf(buf, sizeof(buf),
                  "%d,%s,%lld,%lld,%.10g,%.10g,%.10g,%.10g,%llu,%.10g,%d,%zu,"
                  "%lld,%d,%d\n",
                  r.trial, mode_name(spec.mode).c_str(),
                  static_cast<long long>(spec.n),
                  static_cast<long long>(spec.m), spec.alpha, spec.beta,
                  spec.eps, spec.delta,
                  static_cast<unsigned long long>(spec.seed), r.error,
                  r.exact ? 1 : 0, r.cover_patterns,
                  static_cast<long long>(r.rep_domain_size), r.pmw_updates,
                  r.budget_exhausted ? 1 : 0);
    csv += buf;
  }
  return csv;
}

}  // namespace papqr
