#include <gtest/gtest.h>

#include <sstream>

#include "dhsp/errors.hpp"
#include "dhsp/rng.hpp"
#include "dhsp/success.hpp"
#include "oracles.hpp"

using namespace dhsp;

namespace {

/// p = (1 / (2^k N^{k+1})) sum_x (sum_r sqrt(eta_r))^2 with brute-force counts.
double brute_success(std::uint64_t n, int k) {
  double total = 0.0;
  const auto labels = static_cast<std::uint64_t>(std::pow(n, k));
  for (std::uint64_t flat = 0; flat < labels; ++flat) {
    double roots = 0.0;
    for (auto c : oracle::eta(n, oracle::label(flat, n, k))) roots += std::sqrt(static_cast<double>(c));
    total += roots * roots;
  }
  return total / (std::ldexp(1.0, k) * std::pow(n, k + 1));
}

}  // namespace

TEST(Success, ExactSmallCases) {
  EXPECT_EQ(success_exact(2, 1).p, 0.75);
  EXPECT_EQ(success_exact(2, 1).method, Method::kExact);
  EXPECT_DOUBLE_EQ(success_exact(4, 1).p, 7.0 / 16.0);
  EXPECT_LT(success_exact(4, 1).p, 0.5);
  for (std::uint64_t n = 2; n <= 32; ++n) {
    EXPECT_NEAR(success_exact(n, 1).p, (2.0 * n - 1) / (n * n), 1e-14) << n;
  }
}

TEST(Success, ExactMatchesBruteForceAndDenseOracle) {
  for (std::uint64_t n = 2; n <= 6; ++n) {
    for (int k = 1; k <= 4; ++k) {
      if (std::pow(n, k) > 2000) continue;
      EXPECT_NEAR(success_exact(n, k).p, brute_success(n, k), 1e-12) << n << " " << k;
    }
  }
  for (std::uint64_t n = 2; n <= 8; ++n) {
    for (int k = 1; k <= 2; ++k) {
      if (std::pow(2.0 * n, k) > 256) continue;
      const double exact = success_exact(n, k).p;
      EXPECT_NEAR(exact, oracle::dense_success(n, k), 1e-10) << n << " " << k;
      for (std::uint64_t d = 0; d < n; ++d) EXPECT_NEAR(success_dense_oracle(n, k, d), exact, 1e-10);
    }
  }
}

TEST(Success, OverLabelsEqualsExactOnFullEnumeration) {
  for (auto [n, k] : {std::pair<std::uint64_t, int>{3, 4}, {8, 3}, {5, 5}}) {
    std::vector<BlockLabel> labels;
    for (std::uint64_t flat = 0; flat < static_cast<std::uint64_t>(std::pow(n, k)); ++flat) {
      labels.push_back(BlockLabel::from_flat(flat, n, k));
    }
    EXPECT_EQ(success_over_labels(n, k, labels).p, success_exact(n, k).p);
  }
}

TEST(Success, MonteCarloSmall) {
  const auto pt = success_mc(2, 1, 100000, 12);
  EXPECT_NEAR(pt.p, 0.75, 4 * pt.stderr_p);
  EXPECT_EQ(pt.method, Method::kMonteCarlo);
  const auto other = success_mc(6, 4, 20000, 3);
  EXPECT_NEAR(other.p, success_exact(6, 4).p, 4 * other.stderr_p);
}

TEST(Success, MonteCarloIsThreadIndependent) {
  const auto a = success_mc(64, 8, 5000, 42, Parallelism{1});
  const auto b = success_mc(64, 8, 5000, 42, Parallelism{7});
  EXPECT_EQ(a.p, b.p);
  EXPECT_EQ(a.stderr_p, b.stderr_p);
  EXPECT_NE(a.p, success_mc(64, 8, 5000, 43).p);
}

TEST(Success, ThresholdRegimes) {
  const auto upper = success_mc(64, 10, 10000, 1);
  EXPECT_GE(upper.p, 0.125);
  const auto lower = success_mc(1024, 5, 10000, 1);
  EXPECT_LE(lower.p, 32.0 / 1024 + 4 * lower.stderr_p);
}

TEST(Success, TrivialSubgroup) {
  EXPECT_DOUBLE_EQ(trivial_success(2, 1).p, 0.25);
  EXPECT_GE(trivial_success(8, 7).p, 15.0 / 16.0);
  EXPECT_GE(trivial_success(2, 5).p, 1.0 - 2.0 / 32.0);
  const auto mc = trivial_success_mc(8, 7, 20000, 9);
  EXPECT_NEAR(mc.p, trivial_success(8, 7).p, 4 * mc.stderr_p + 1e-12);
  // Dense cross-check: 1 - rank G / (2N)^k.
  for (std::uint64_t n = 2; n <= 4; ++n) {
    DenseOperator g = DenseOperator::Zero(static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(2 * n));
    for (std::uint64_t d = 0; d < n; ++d) g += oracle::shift_state(n, 1, d);
    EXPECT_NEAR(trivial_success(n, 1).p, 1.0 - numerical_rank(g, 1e-10) / (2.0 * n), 1e-14);
  }
}

TEST(Success, Sweep) {
  std::vector<int> ks;
  for (int k = 2; k <= 12; ++k) ks.push_back(k);
  const auto points = threshold_sweep(64, ks, 10000, 7);
  ASSERT_EQ(points.size(), ks.size());
  int first_above = 0;
  for (const auto& pt : points) {
    if (pt.p >= 0.125 && first_above == 0) first_above = pt.k;
    EXPECT_NEAR(pt.nu, pt.k / 6.0, 1e-12);
  }
  EXPECT_GT(first_above, 0);
  EXPECT_LE(first_above, 10);
  EXPECT_EQ(points[1].method, Method::kExact);
  EXPECT_LE(points[1].p, 0.125);
  const std::vector<int> bad{0, 1};
  EXPECT_THROW(threshold_sweep(64, bad, 100, 1), std::invalid_argument);

  std::ostringstream csv;
  const std::vector<ThresholdPoint> one{success_exact(2, 1)};
  write_sweep_csv(csv, one);
  EXPECT_EQ(csv.str(), "N,k,nu,p,stderr,method\n2,1,1.000000,0.75,0,EXACT\n");
}

TEST(Success, ExactGuard) { EXPECT_THROW(success_exact(1024, 5), GuardError); }

TEST(Success, LsbMatchesDenseOracle) {
  for (std::uint64_t n : {2u, 4u, 6u}) {
    for (int k = 1; k <= 2; ++k) {
      if (std::pow(2.0 * n, k) > 256) continue;
      EXPECT_NEAR(lsb_success_exact(n, k), lsb_dense_oracle(n, k), 1e-10) << n << " " << k;
    }
  }
  EXPECT_DOUBLE_EQ(lsb_success_exact(2, 1), 0.75);
  const auto est = lsb_success_mc(2, 1, 10000, 5);
  EXPECT_NEAR(est.mean, 0.75, 4 * est.stderr_mean + 1e-12);
  EXPECT_THROW(lsb_success_exact(3, 1), std::invalid_argument);
}

TEST(Success, LsbBound) {
  EXPECT_NEAR(lsb_upper_bound(256, 4), 0.5 * (1 + 16.0 / 256 + 6.0 / 256 + 3.0 / 16), 1e-15);
  EXPECT_NEAR(lsb_upper_bound(256, 4), 0.6367, 1e-4);
  EXPECT_NEAR(lsb_upper_bound(1024, 5), 0.5 * (1 + 32.0 / 1024 + 6.0 / 1024 + 3.0 / 32), 1e-15);
  EXPECT_LT(lsb_upper_bound(4096, 6), lsb_upper_bound(1024, 5));
  EXPECT_TRUE(lsb_threshold_check(256, 4, 10000, 2).within_bound);
}

TEST(Success, CountingIdentities) {
  for (std::uint64_t n : {2u, 4u, 6u, 8u}) {
    for (int k = 1; k <= 5; ++k) {
      const auto ids = lsb_counting_identities(n, k);
      EXPECT_TRUE(ids.holds()) << n << " " << k;
      // Independent brute-force sums.
      std::vector<std::uint64_t> sums(n, 0);
      std::uint64_t cross = 0;
      for (std::uint64_t flat = 0; flat < static_cast<std::uint64_t>(std::pow(n, k)); ++flat) {
        const auto eta = oracle::eta(n, oracle::label(flat, n, k));
        for (std::uint64_t r = 0; r < n; ++r) {
          sums[r] += eta[r];
          if (r != 0 && 2 * r != n) cross += eta[r] * eta[(n - r) % n];
        }
      }
      EXPECT_TRUE(ids.sum_eta_zero == sums[0]);
      EXPECT_TRUE(ids.cross_sum == cross);
      for (std::uint64_t r = 0; r < n; ++r) EXPECT_TRUE(ids.sum_eta[r] == sums[r]);
    }
  }
}

TEST(Success, EmptySetIdentityOddN) {
  for (std::uint64_t n : {3u, 5u, 7u}) {
    for (int k = 1; k <= 4; ++k) {
      std::uint64_t sum = 0;
      for (std::uint64_t flat = 0; flat < static_cast<std::uint64_t>(std::pow(n, k)); ++flat) {
        sum += oracle::eta(n, oracle::label(flat, n, k))[0];
      }
      const auto nk1 = static_cast<std::uint64_t>(std::pow(n, k - 1));
      EXPECT_EQ(sum, nk1 * ((std::uint64_t{1} << k) - 1) + nk1 * n);
    }
  }
}

TEST(Success, ChiSingleCopy) {
  EXPECT_NEAR(chi_single_copy(2).chi, 0.5, 1e-12);
  EXPECT_NEAR(chi_single_copy(4).chi, 0.75, 1e-12);
  for (std::uint64_t n = 2; n <= 8; ++n) {
    const auto r = chi_single_copy(n);
    for (Eigen::Index i = 0; i < r.state_spectrum.size(); ++i) {
      const double expected = i < static_cast<Eigen::Index>(n) ? 0.0 : 1.0 / n;
      EXPECT_NEAR(r.state_spectrum(i), expected, 1e-12);
    }
  }
}

TEST(Success, InfoBound) {
  // k (1/2) >= 1 - 0 - 0 at N=2, p=1 gives k >= 2.
  EXPECT_EQ(info_lower_bound(2, 1.0).k_min, 2);
  const auto r = info_lower_bound(1024, 0.125);
  const double i_p = 10.0 - 0.875 * std::log2(1023.0) - binary_entropy(0.125);
  EXPECT_NEAR(r.i_p_lower, i_p, 1e-12);
  EXPECT_EQ(r.k_min, std::max(1, static_cast<int>(std::ceil(i_p / (1 - 1.0 / 1024)))));
  EXPECT_LT(r.k_min, 10);
  EXPECT_EQ(info_lower_bound(1u << 20, 0.125).k_min < 20, true);
  EXPECT_EQ(info_lower_bound(64, 1e-9).k_min, 1);
  EXPECT_THROW(info_lower_bound(4, 0.0), std::invalid_argument);
  EXPECT_THROW(info_lower_bound(4, 1.5), std::invalid_argument);
  std::ostringstream csv;
  const std::vector<InfoBoundResult> rows{info_lower_bound(2, 1.0)};
  write_infobound_csv(csv, rows);
  EXPECT_EQ(csv.str(), "N,p,k_min\n2,1,2\n");
}

TEST(Success, LargeCountFraction) {
  const auto f = large_count_fraction(64, 12, 0, 10000, 1);
  EXPECT_GE(f.mean, 1.0 - 4.0 * 64 / 4095.0 - 0.02);
}
