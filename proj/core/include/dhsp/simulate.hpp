#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "dhsp/dihedral.hpp"
#include "dhsp/parallel.hpp"
#include "dhsp/rng.hpp"

namespace dhsp {

/// Outcome j in Z_N, or nullopt for the trivial-subgroup outcome.
using Outcome = std::optional<std::uint64_t>;

struct TrialRecord {
  Hidden hidden;
  BlockLabel x;
  Outcome outcome;
  bool correct = false;
};

/// probs[j] for j in Z_N followed by probs[N] for the trivial outcome.
struct OutcomeDistribution {
  BlockLabel x;
  Hidden hidden;
  std::vector<double> probs;

  double trivial() const { return probs.back(); }
};

OutcomeDistribution outcome_distribution(const BlockLabel& x, Hidden hidden);

/// Inverse CDF with one uniform draw; ties go to the smaller index.
Outcome sample_outcome(const OutcomeDistribution& dist, double u);

struct TrialSummary {
  std::uint64_t n = 0;
  int k = 0;
  Hidden hidden = Hidden::trivial();
  std::size_t trials = 0;
  std::size_t successes = 0;
  double rate = 0.0;
  double stderr_rate = 0.0;
  std::vector<TrialRecord> records;
};

/// Records are kept only when keep_records is set; they are ordered by trial.
TrialSummary run_trials(std::uint64_t n, int k, Hidden hidden, std::size_t trials,
                        std::uint64_t seed, const Parallelism& par = {},
                        bool keep_records = true);

/// Compares probs for hidden d with probs for hidden d + delta, shifted by
/// delta, on sampled blocks. Equality is exact.
bool shift_covariance_check(std::uint64_t n, int k, std::size_t samples, std::uint64_t seed);

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records);
void write_trial_summary(std::ostream& out, const TrialSummary& summary);

}  // namespace dhsp
