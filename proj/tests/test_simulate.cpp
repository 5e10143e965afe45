#include <gtest/gtest.h>

#include <sstream>

#include "dhsp/simulate.hpp"
#include "dhsp/subset_sum.hpp"
#include "dhsp/success.hpp"
#include "oracles.hpp"

using namespace dhsp;

TEST(Simulate, DistributionExamples) {
  auto dist = outcome_distribution(BlockLabel({1}, 2), Hidden::shift(0));
  EXPECT_NEAR(dist.probs[0], 1.0, 1e-15);
  EXPECT_NEAR(dist.probs[1], 0.0, 1e-15);
  dist = outcome_distribution(BlockLabel({0}, 2), Hidden::shift(0));
  EXPECT_NEAR(dist.probs[0], 0.5, 1e-15);
  EXPECT_NEAR(dist.probs[1], 0.5, 1e-15);
  EXPECT_NEAR(dist.trivial(), 0.0, 1e-12);
}

TEST(Simulate, DistributionMatchesBlockEffects) {
  // probs[j] = |<e_j | rho_d^x>|^2 from explicit vectors.
  Rng rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint64_t n = 2 + rng.below(8);
    const int k = 1 + static_cast<int>(rng.below(6));
    const auto x = BlockLabel::uniform(rng, n, k);
    const std::uint64_t d = rng.below(n);
    const auto dist = outcome_distribution(x, Hidden::shift(d));
    const auto dim = static_cast<Eigen::Index>(std::uint64_t{1} << k);
    oracle::Vec state(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
      state(b) = oracle::root_of_unity(static_cast<std::int64_t>(d * x.dot(static_cast<std::uint64_t>(b))), n) /
                 std::sqrt(static_cast<double>(dim));
    }
    double total = 0.0;
    for (std::uint64_t j = 0; j < n; ++j) {
      oracle::Vec e = oracle::Vec::Zero(dim);
      for (std::uint64_t p = 0; p < n; ++p) {
        e += oracle::root_of_unity(static_cast<std::int64_t>(j * p), n) * superposition_vector(x, p) /
             std::sqrt(static_cast<double>(n));
      }
      EXPECT_NEAR(dist.probs[j], std::norm(e.dot(state)), 1e-12);
      total += dist.probs[j];
    }
    EXPECT_NEAR(total + dist.trivial(), 1.0, 1e-12);
    EXPECT_NEAR(dist.trivial(), 0.0, 1e-12);
  }
}

TEST(Simulate, TrivialHiddenIsFlat) {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = BlockLabel::uniform(rng, 8, 3);
    const auto dist = outcome_distribution(x, Hidden::trivial());
    const auto support = count_eta(x).support_size;
    for (std::uint64_t j = 0; j < 8; ++j) EXPECT_EQ(dist.probs[j], dist.probs[0]);
    EXPECT_NEAR(dist.probs[0], support / (8.0 * 8.0), 1e-15);
    EXPECT_NEAR(dist.trivial(), 1.0 - support / 8.0, 1e-15);
  }
}

TEST(Simulate, SuccessMarginalMatchesExact) {
  for (auto [n, k] : {std::pair<std::uint64_t, int>{4, 3}, {5, 2}, {8, 2}}) {
    double sum = 0.0;
    const auto labels = static_cast<std::uint64_t>(std::pow(n, k));
    for (std::uint64_t flat = 0; flat < labels; ++flat) {
      sum += outcome_distribution(BlockLabel::from_flat(flat, n, k), Hidden::shift(1)).probs[1];
    }
    EXPECT_NEAR(sum / labels, success_exact(n, k).p, 1e-12);
  }
}

TEST(Simulate, SampleOutcome) {
  const OutcomeDistribution dist{BlockLabel({1}, 4), Hidden::shift(0), {0.25, 0.0, 0.5, 0.0, 0.25}};
  EXPECT_EQ(sample_outcome(dist, 0.0), Outcome{0});
  EXPECT_EQ(sample_outcome(dist, 0.25), Outcome{2});
  EXPECT_EQ(sample_outcome(dist, 0.74), Outcome{2});
  EXPECT_EQ(sample_outcome(dist, 0.8), Outcome{});
  EXPECT_EQ(sample_outcome(dist, 0.9999999999999999), Outcome{});
}

TEST(Simulate, TrialsSmall) {
  const auto s = run_trials(2, 1, Hidden::shift(0), 10000, 3);
  EXPECT_NEAR(s.rate, 0.75, 4 * s.stderr_rate);
  ASSERT_EQ(s.records.size(), 10000u);
  for (const auto& r : s.records) EXPECT_EQ(r.correct, r.outcome == Outcome{0});
}

TEST(Simulate, TrialsTrivial) {
  const auto s = run_trials(8, 7, Hidden::trivial(), 10000, 4, {}, false);
  EXPECT_GE(s.rate, 15.0 / 16.0 - 4 * s.stderr_rate);
  EXPECT_NEAR(s.rate, trivial_success(8, 7).p, 4 * s.stderr_rate);
  EXPECT_TRUE(s.records.empty());
}

TEST(Simulate, TrialsShiftIndependent) {
  const auto a = run_trials(64, 10, Hidden::shift(0), 1000, 5, {}, false);
  const auto b = run_trials(64, 10, Hidden::shift(17), 1000, 6, {}, false);
  const double se = std::sqrt(a.stderr_rate * a.stderr_rate + b.stderr_rate * b.stderr_rate);
  EXPECT_LT(std::abs(a.rate - b.rate), 4 * se);
}

TEST(Simulate, MarginalAgreesWithMonteCarlo) {
  Rng rng(77);
  double sum = 0.0;
  const int samples = 10000;
  for (int i = 0; i < samples; ++i) {
    sum += outcome_distribution(BlockLabel::uniform(rng, 64, 10), Hidden::shift(3)).probs[3];
  }
  const auto mc = success_mc(64, 10, 10000, 1);
  EXPECT_NEAR(sum / samples, mc.p, 4 * std::sqrt(2.0) * mc.stderr_p);
}

TEST(Simulate, TrialsDeterministic) {
  const auto a = run_trials(16, 5, Hidden::shift(3), 2000, 9, Parallelism{1});
  const auto b = run_trials(16, 5, Hidden::shift(3), 2000, 9, Parallelism{5});
  std::ostringstream ca, cb;
  write_trials_csv(ca, a.records);
  write_trials_csv(cb, b.records);
  EXPECT_EQ(ca.str(), cb.str());
  EXPECT_EQ(a.rate, b.rate);
}

TEST(Simulate, ShiftCovariance) {
  const auto x = BlockLabel({1, 2}, 4);
  const auto base = outcome_distribution(x, Hidden::shift(1));
  const auto moved = outcome_distribution(x, Hidden::shift(3));
  for (std::uint64_t j = 0; j < 4; ++j) EXPECT_EQ(base.probs[j], moved.probs[(j + 2) % 4]);
  EXPECT_TRUE(shift_covariance_check(8, 5, 100, 1));
  EXPECT_TRUE(shift_covariance_check(64, 10, 50, 2));
}

TEST(Simulate, Formats) {
  std::vector<TrialRecord> records{{Hidden::shift(1), BlockLabel({1}, 2), Outcome{1}, true},
                                   {Hidden::trivial(), BlockLabel({1}, 2), Outcome{}, true}};
  std::ostringstream csv;
  write_trials_csv(csv, records);
  EXPECT_EQ(csv.str(), "trial,hidden,outcome,correct\n0,1,1,1\n1,TRIVIAL,TRIVIAL,1\n");
  TrialSummary s;
  s.n = 2;
  s.k = 1;
  s.hidden = Hidden::shift(0);
  s.trials = 4;
  s.successes = 3;
  s.rate = 0.75;
  s.stderr_rate = 0.25;
  std::ostringstream summary;
  write_trial_summary(summary, s);
  EXPECT_EQ(summary.str(),
            "{\"N\": 2, \"k\": 1, \"hidden\": \"0\", \"trials\": 4, \"successes\": 3, \"rate\": 0.75, \"stderr\": 0.25}\n");
  EXPECT_THROW(run_trials(4, 1, Hidden::shift(0), 0, 1), std::invalid_argument);
}
