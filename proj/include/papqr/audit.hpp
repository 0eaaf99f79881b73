#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "papqr/distribution.hpp"
#include "papqr/rng.hpp"

namespace papqr {

// Tracing-attack harness configuration. The audited mechanism sees a dataset
// of s = n + m rows (the first n treated as private by mechanisms that care)
// and must answer all p stump queries within [-1, 1].
struct TraceConfig {
  std::int32_t p = 64;
  std::int32_t n = 16;
  std::int32_t m = 0;
  double alpha = 0.1;  // accuracy target handed to the audited mechanism
  int trials = 100;
  double fpr_target = 0.05;
  int null_calibration_draws = 10000;

  void validate() const;
};

using SignRows = std::vector<std::vector<std::int8_t>>;

// A release mechanism under audit: dataset rows in, stump answers out.
using Mechanism =
    std::function<std::vector<double>(const SignRows& rows, Rng& rng)>;

struct MechanismSpec {
  enum class Kind : std::uint8_t {
    empirical_mean,   // exact column means of all rows
    constant_zero,    // ignores the data entirely
    pap_release,      // full release pipeline: first n rows private, rest public
    empirical_first_n // column means of the first n rows only
  };
  Kind kind = Kind::empirical_mean;
  double beta = 0.1;
  double eps = 1.0;
  double delta = 1e-5;

  std::string name() const;
};

Mechanism make_mechanism(const MechanismSpec& spec, const TraceConfig& cfg);

struct TrialRecord {
  double tau = 0.0;
  int member_flags = 0;
  int members = 0;
  int nonmember_flags = 0;
  int nonmembers = 0;
  double max_query_error = 0.0;  // max_j |q_j - b_j| against the trial's biases
};

struct AuditReport {
  double member_in_rate = 0.0;
  double nonmember_in_rate = 0.0;
  double mean_tau = 0.0;
  std::vector<TrialRecord> per_trial;
};

// Product distribution on {+1,-1}^p with biases drawn i.i.d. uniform on
// [-1, 1]; the hard instance family for tracing.
Distribution fingerprinting_distribution(std::int32_t p, Rng& rng);

// Centered inner-product score sum_j q_j (y_j - y_ref_j), with y_ref a fresh
// reference draw standing in for the unknown per-coordinate bias offset.
double attack_score(std::span<const double> q, std::span<const std::int8_t> y,
                    std::span<const std::int8_t> y_ref);

// Per trial: draw the fingerprinting distribution and s member rows, run the
// mechanism, calibrate the flag threshold as the (1 - fpr_target) quantile of
// null scores on held-out draws, then flag members and a disjoint held-out
// set. Trials run on independent child streams of `rng`.
AuditReport audit_mechanism(const Mechanism& mechanism, const TraceConfig& cfg,
                            const Rng& rng, int workers = 1);

struct SweepPoint {
  TraceConfig cfg;
  MechanismSpec mech;
};

std::vector<std::pair<SweepPoint, AuditReport>> frontier_sweep(
    std::span<const SweepPoint> grid, const Rng& rng, int workers = 1);

// CSV rows: trial,p,n,m,alpha,mechanism,tau,member_in_rate,nonmember_in_rate,
// max_query_error (one row per trial per grid point).
std::string audit_csv(
    std::span<const std::pair<SweepPoint, AuditReport>> results);

}  // namespace papqr
