#include "papqr/audit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "papqr/parallel.hpp"
#include "papqr/release.hpp"

namespace papqr {

void TraceConfig::validate() const {
  if (p < 1) throw std::invalid_argument("trace config: p must be >= 1");
  if (n < 1) throw std::invalid_argument("trace config: n must be >= 1");
  if (m < 0) throw std::invalid_argument("trace config: m must be >= 0");
  if (trials < 1) throw std::invalid_argument("trace config: trials >= 1");
  if (!(fpr_target > 0.0 && fpr_target < 0.5))
    throw std::invalid_argument("trace config: fpr_target must be in (0, 0.5)");
  if (null_calibration_draws < 100)
    throw std::invalid_argument("trace config: need >= 100 calibration draws");
}

std::string MechanismSpec::name() const {
  switch (kind) {
    case Kind::empirical_mean: return "empirical_mean";
    case Kind::constant_zero: return "constant_zero";
    case Kind::pap_release: return "pap_release";
    case Kind::empirical_first_n: return "empirical_first_n";
  }
  return "unknown";
}

namespace {

std::vector<double> column_means(const SignRows& rows, std::size_t p,
                                 std::size_t limit) {
  std::vector<double> q(p, 0.0);
  const std::size_t count = std::min(limit, rows.size());
  for (std::size_t r = 0; r < count; ++r)
    for (std::size_t j = 0; j < p; ++j)
      q[j] += static_cast<double>(rows[r][j]);
  if (count > 0)
    for (double& v : q) v /= static_cast<double>(count);
  return q;
}

}  // namespace

Mechanism make_mechanism(const MechanismSpec& spec, const TraceConfig& cfg) {
  const auto p = static_cast<std::size_t>(cfg.p);
  switch (spec.kind) {
    case MechanismSpec::Kind::empirical_mean:
      return [p](const SignRows& rows, Rng&) {
        return column_means(rows, p, rows.size());
      };
    case MechanismSpec::Kind::constant_zero:
      return [p](const SignRows&, Rng&) { return std::vector<double>(p, 0.0); };
    case MechanismSpec::Kind::empirical_first_n: {
      const auto n = static_cast<std::size_t>(cfg.n);
      return [p, n](const SignRows& rows, Rng&) {
        return column_means(rows, p, n);
      };
    }
    case MechanismSpec::Kind::pap_release: {
      const TraceConfig c = cfg;
      const MechanismSpec s = spec;
      return [c, s, p](const SignRows& rows, Rng& rng) {
        const auto n = std::min<std::size_t>(rows.size(),
                                             static_cast<std::size_t>(c.n));
        std::vector<DomainPoint> priv, pub;
        for (std::size_t r = 0; r < rows.size(); ++r) {
          SignVector sv(rows[r].begin(), rows[r].end());
          (r < n ? priv : pub).emplace_back(std::move(sv));
        }
        const HypothesisClass cls = HypothesisClass::all_stumps(c.p);
        const ReleaseStructure g =
            pap_release(priv, pub, cls, c.alpha, s.beta, s.eps, s.delta, rng);
        std::vector<double> q(p);
        for (std::int32_t j = 1; j <= c.p; ++j)
          q[static_cast<std::size_t>(j - 1)] =
              query(g, Hypothesis::make_stump(j));
        return q;
      };
    }
  }
  throw std::logic_error("unreachable mechanism kind");
}

Distribution fingerprinting_distribution(std::int32_t p, Rng& rng) {
  if (p < 1) throw std::invalid_argument("fingerprinting_distribution: p >= 1");
  std::vector<double> biases(static_cast<std::size_t>(p));
  for (double& b : biases) b = rng.uniform(-1.0, 1.0);
  return Distribution::product_signs_dist(std::move(biases));
}

double attack_score(std::span<const double> q, std::span<const std::int8_t> y,
                    std::span<const std::int8_t> y_ref) {
  if (q.size() != y.size() || q.size() != y_ref.size())
    throw std::invalid_argument("attack_score: length mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j)
    s += q[j] * static_cast<double>(y[j] - y_ref[j]);
  return s;
}

namespace {

SignRows draw_rows(const Distribution& d, std::size_t count, std::size_t p,
                   Rng& rng) {
  SignRows rows(count, std::vector<std::int8_t>(p));
  for (auto& row : rows) d.fill_signs(row.data(), rng);
  return rows;
}

TrialRecord run_trial(const Mechanism& mechanism, const TraceConfig& cfg,
                      Rng trial_rng) {
  const auto p = static_cast<std::size_t>(cfg.p);
  const auto s = static_cast<std::size_t>(cfg.n + cfg.m);

  Rng bias_rng = trial_rng.child(0);
  Rng member_rng = trial_rng.child(1);
  Rng holdout_rng = trial_rng.child(2);
  Rng null_rng = trial_rng.child(3);
  Rng mech_rng = trial_rng.child(4);
  Rng member_ref_rng = trial_rng.child(5);
  Rng holdout_ref_rng = trial_rng.child(6);

  const Distribution dist = fingerprinting_distribution(cfg.p, bias_rng);
  const SignRows members = draw_rows(dist, s, p, member_rng);
  const SignRows holdout = draw_rows(dist, s, p, holdout_rng);

  const std::vector<double> q = mechanism(members, mech_rng);
  if (q.size() != p)
    throw std::runtime_error("audit: mechanism answered the wrong dimension");
  for (double v : q) {
    if (!(v >= -1.0 && v <= 1.0))
      throw std::runtime_error("audit: mechanism answer outside [-1, 1]");
  }

  // Null scores from fresh draws calibrate the flag threshold.
  std::vector<double> null_scores(
      static_cast<std::size_t>(cfg.null_calibration_draws));
  std::vector<std::int8_t> y(p), y_ref(p);
  for (double& score : null_scores) {
    dist.fill_signs(y.data(), null_rng);
    dist.fill_signs(y_ref.data(), null_rng);
    score = attack_score(q, y, y_ref);
  }
  std::sort(null_scores.begin(), null_scores.end());
  const auto rank = static_cast<std::size_t>(std::ceil(
      (1.0 - cfg.fpr_target) * static_cast<double>(null_scores.size())));
  const double tau = null_scores[std::min(rank, null_scores.size()) - 1];

  TrialRecord rec;
  rec.tau = tau;
  rec.members = static_cast<int>(s);
  rec.nonmembers = static_cast<int>(s);
  for (const auto& row : members) {
    dist.fill_signs(y_ref.data(), member_ref_rng);
    if (attack_score(q, row, y_ref) > tau) ++rec.member_flags;
  }
  for (const auto& row : holdout) {
    dist.fill_signs(y_ref.data(), holdout_ref_rng);
    if (attack_score(q, row, y_ref) > tau) ++rec.nonmember_flags;
  }
  for (std::size_t j = 0; j < p; ++j)
    rec.max_query_error =
        std::max(rec.max_query_error, std::abs(q[j] - dist.biases[j]));
  return rec;
}

}  // namespace

AuditReport audit_mechanism(const Mechanism& mechanism, const TraceConfig& cfg,
                            const Rng& rng, int workers) {
  cfg.validate();
  AuditReport report;
  report.per_trial.resize(static_cast<std::size_t>(cfg.trials));
  parallel_trials(cfg.trials, workers, [&](int t) {
    report.per_trial[static_cast<std::size_t>(t)] =
        run_trial(mechanism, cfg, rng.child(static_cast<std::uint64_t>(t)));
  });
  long member_flags = 0, members = 0, nonmember_flags = 0, nonmembers = 0;
  double tau_sum = 0.0;
  for (const TrialRecord& r : report.per_trial) {
    member_flags += r.member_flags;
    members += r.members;
    nonmember_flags += r.nonmember_flags;
    nonmembers += r.nonmembers;
    tau_sum += r.tau;
  }
  report.member_in_rate =
      static_cast<double>(member_flags) / static_cast<double>(members);
  report.nonmember_in_rate =
      static_cast<double>(nonmember_flags) / static_cast<double>(nonmembers);
  report.mean_tau = tau_sum / static_cast<double>(cfg.trials);
  return report;
}

std::vector<std::pair<SweepPoint, AuditReport>> frontier_sweep(
    std::span<const SweepPoint> grid, const Rng& rng, int workers) {
  if (grid.empty()) throw std::invalid_argument("frontier_sweep: empty grid");
  std::vector<std::pair<SweepPoint, AuditReport>> out;
  out.reserve(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const Mechanism mech = make_mechanism(grid[g].mech, grid[g].cfg);
    out.emplace_back(grid[g],
                     audit_mechanism(mech, grid[g].cfg,
                                     rng.child(static_cast<std::uint64_t>(g)),
                                     workers));
  }
  return out;
}

std::string audit_csv(
    std::span<const std::pair<SweepPoint, AuditReport>> results) {
  std::string csv =
      "trial,p,n,m,alpha,mechanism,tau,member_in_rate,nonmember_in_rate,"
      "max_query_error\n";
  char buf[256];
  for (const auto& [point, report] : results) {
    for (std::size_t t = 0; t < report.per_trial.size(); ++t) {
      const TrialRecord& r = report.per_trial[t];
      std::snprintf(
          buf, sizeof(buf), "%zu,%d,%d,%d,%.10g,%s,%.10g,%.10g,%.10g,%.10g\n",
          t, point.cfg.p, point.cfg.n, point.cfg.m, point.cfg.alpha,
          point.mech.name().c_str(), r.tau,
          static_cast<double>(r.member_flags) / std::max(1, r.members),
          static_cast<double>(r.nonmember_flags) / std::max(1, r.nonmembers),
          r.max_query_error);
      csv += buf;
    }
  }
  return csv;
}

}  // namespace papqr
