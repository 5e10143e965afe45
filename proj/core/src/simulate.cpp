#include "dhsp/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "dhsp/phase.hpp"
#include "dhsp/subset_sum.hpp"

namespace dhsp {

namespace {

std::string hidden_text(Hidden h) { return h.is_trivial() ? "TRIVIAL" : std::to_string(h.d()); }

std::string outcome_text(const Outcome& o) { return o ? std::to_string(*o) : "TRIVIAL"; }

bool is_correct(Hidden hidden, const Outcome& outcome) {
  if (hidden.is_trivial()) return !outcome.has_value();
  return outcome.has_value() && *outcome == hidden.d();
}

}  // namespace

OutcomeDistribution outcome_distribution(const BlockLabel& x, Hidden hidden) {
  const std::uint64_t n = x.n();
  const int k = x.k();
  const auto profile = count_eta(x);
  OutcomeDistribution dist{x, hidden, std::vector<double>(n + 1, 0.0)};

  if (hidden.is_trivial()) {
    const double support = static_cast<double>(profile.support_size);
    const double each = std::ldexp(support / static_cast<double>(n), -k);
    std::fill(dist.probs.begin(), dist.probs.end() - 1, each);
    dist.probs[n] = 1.0 - std::ldexp(support, -k);
    return dist;
  }

  std::vector<double> roots;
  std::vector<std::uint64_t> support;
  for (std::uint64_t p = 0; p < n; ++p) {
    if (profile.eta[p] == 0) continue;
    support.push_back(p);
    roots.push_back(std::sqrt(to_double(profile.eta[p])));
  }
  // weight[delta] = |sum_p omega^{delta p} sqrt(eta_p)|^2 / (N 2^k)
  const PhaseTable omega(n);
  const double scale = std::ldexp(1.0 / static_cast<double>(n), -k);
  std::vector<double> weight(n);
  for (std::uint64_t delta = 0; delta < n; ++delta) {
    Complex amp = 0.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
      amp += roots[i] * omega(static_cast<std::int64_t>((delta * support[i]) % n));
    }
    weight[delta] = std::norm(amp) * scale;
  }
  const std::uint64_t d = hidden.d() % n;
  double total = 0.0;
  for (double w : weight) total += w;
  for (std::uint64_t j = 0; j < n; ++j) dist.probs[j] = weight[(d + n - j) % n];
  dist.probs[n] = std::max(0.0, 1.0 - total);
  return dist;
}

Outcome sample_outcome(const OutcomeDistribution& dist, double u) {
  const std::size_t n = dist.probs.size() - 1;
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t j = 0; j <= n; ++j) {
    if (dist.probs[j] <= 0.0) continue;
    last_positive = j;
    cumulative += dist.probs[j];
    if (u < cumulative) return j == n ? Outcome{} : Outcome{j};
  }
  return last_positive == n ? Outcome{} : Outcome{last_positive};
}

TrialSummary run_trials(std::uint64_t n, int k, Hidden hidden, std::size_t trials,
                        std::uint64_t seed, const Parallelism& par, bool keep_records) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (n < 2) throw std::invalid_argument("N must be >= 2");
  if (k < 1 || k > kMaxCopies) throw std::invalid_argument("k must be in [1, 64]");
  if (!hidden.is_trivial() && hidden.d() >= n) throw std::invalid_argument("d must be < N");

  const Rng root(seed);
  std::vector<std::vector<TrialRecord>> shard_records(kShards);
  std::vector<std::size_t> shard_successes(kShards, 0);
  for_each_shard(kShards, par, [&](std::size_t s) {
    Rng rng = root.split(s);
    const std::size_t count = shard_size(trials, kShards, s);
    for (std::size_t i = 0; i < count; ++i) {
      BlockLabel x = BlockLabel::uniform(rng, n, k);
      const auto dist = outcome_distribution(x, hidden);
      const Outcome outcome = sample_outcome(dist, rng.uniform01());
      const bool correct = is_correct(hidden, outcome);
      if (correct) ++shard_successes[s];
      if (keep_records) shard_records[s].push_back({hidden, std::move(x), outcome, correct});
    }
  });

  TrialSummary summary;
  summary.n = n;
  summary.k = k;
  summary.hidden = hidden;
  summary.trials = trials;
  for (std::size_t s = 0; s < kShards; ++s) {
    summary.successes += shard_successes[s];
    for (auto& r : shard_records[s]) summary.records.push_back(std::move(r));
  }
  const double t = static_cast<double>(trials);
  summary.rate = static_cast<double>(summary.successes) / t;
  summary.stderr_rate = trials > 1 ? std::sqrt(summary.rate * (1.0 - summary.rate) / (t - 1.0)) : 0.0;
  return summary;
}

bool shift_covariance_check(std::uint64_t n, int k, std::size_t samples, std::uint64_t seed) {
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const BlockLabel x = BlockLabel::uniform(rng, n, k);
    const std::uint64_t d = rng.below(n);
    const std::uint64_t delta = rng.below(n);
    const auto base = outcome_distribution(x, Hidden::shift(d));
    const auto moved = outcome_distribution(x, Hidden::shift((d + delta) % n));
    for (std::uint64_t j = 0; j < n; ++j) {
      if (base.probs[j] != moved.probs[(j + delta) % n]) return false;
    }
    if (base.trivial() != moved.trivial()) return false;
  }
  return true;
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << "trial,hidden,outcome,correct\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    fmt::print(out, "{},{},{},{}\n", i, hidden_text(r.hidden), outcome_text(r.outcome),
               r.correct ? 1 : 0);
  }
}

void write_trial_summary(std::ostream& out, const TrialSummary& s) {
  fmt::print(out,
             "{{\"N\": {}, \"k\": {}, \"hidden\": \"{}\", \"trials\": {}, \"successes\": {}, "
             "\"rate\": {:.12g}, \"stderr\": {:.6g}}}\n",
             s.n, s.k, hidden_text(s.hidden), s.trials, s.successes, s.rate, s.stderr_rate);
}

}  // namespace dhsp
