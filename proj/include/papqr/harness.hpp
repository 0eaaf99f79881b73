#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "papqr/release.hpp"

namespace papqr {

enum class Mode : std::uint8_t { pap, public_only, private_only };

std::string mode_name(Mode m);
Mode mode_from_name(const std::string& s);

// One seeded experiment: draw datasets, run the selected release mode, score
// the exact worst-case error. The private and public draws for trial t are
// identical across modes under the same seed, so modes can be compared
// pairwise trial by trial.
struct ExperimentSpec {
  HypothesisClass cls;
  Distribution dist;
  Mode mode = Mode::pap;
  std::int64_t n = 1000;
  std::int64_t m = 100;
  double alpha = 0.1;
  double beta = 0.1;
  double eps = 1.0;
  double delta = 1e-5;
  int trials = 10;
  std::uint64_t seed = 1;
  int workers = 1;
  // private-only: thresholds are released over a 2^grid_bits-point
  // discretization of the declared interval.
  int grid_bits = 12;
  bool noise_off = false;

  void validate() const;
};

struct TrialRow {
  int trial = 0;
  double error = 0.0;
  bool exact = true;
  std::size_t cover_patterns = 0;
  std::int64_t rep_domain_size = 0;
  int pmw_updates = 0;
  bool budget_exhausted = false;
};

std::vector<TrialRow> run_experiment(const ExperimentSpec& spec);

// Empirical-mean release from the public sample alone: every query is
// answered by its mean over w (queries sharing a pattern share the answer).
ReleaseStructure public_only_release(const HypothesisClass& cls,
                                     std::span<const DomainPoint> w);

// The deterministic point set private-only mode releases over: cell centers
// of a 2^bits grid for thresholds, log2(p) separating rows for stumps, the
// whole domain for finite classes.
std::vector<DomainPoint> discretization_grid(const HypothesisClass& cls,
                                             int bits);

// Fixed column order:
// trial,mode,n,m,alpha,beta,eps,delta,seed,error,error_exact,cover_patterns,
// rep_domain_size,pmw_updates,budget_exhausted
std::string experiment_csv(const ExperimentSpec& spec,
                           std::span<const TrialRow> rows);

}  // namespace papqr
