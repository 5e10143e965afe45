#include <gtest/gtest.h>

#include "dhsp/errors.hpp"
#include "dhsp/pgm.hpp"
#include "dhsp/rng.hpp"
#include "dhsp/subset_sum.hpp"
#include "oracles.hpp"

using namespace dhsp;

namespace {

std::vector<DenseOperator> dihedral_states(std::uint64_t n, int k) {
  std::vector<DenseOperator> states;
  for (std::uint64_t d = 0; d < n; ++d) states.push_back(dense_state(Hidden::shift(d), k, n));
  return states;
}

std::vector<double> uniform(std::size_t m) { return std::vector<double>(m, 1.0 / static_cast<double>(m)); }

DenseOperator projector(const StateVector& v) { return v * v.adjoint(); }

}  // namespace

TEST(Pgm, PovmBlockExamples) {
  const double h = 1.0 / std::sqrt(2.0);
  const auto a = povm_block(BlockLabel({1}, 2));
  StateVector plus(2), minus(2);
  plus << h, h;
  minus << h, -h;
  EXPECT_LT(max_abs(a.effect(0) - projector(plus)), 1e-15);
  EXPECT_LT(max_abs(a.effect(1) - projector(minus)), 1e-15);
  EXPECT_LT(max_abs(a.effect(0) * a.effect(1)), 1e-15);

  const auto b = povm_block(BlockLabel({0}, 2));
  StateVector s0 = superposition_vector(BlockLabel({0}, 2), 0);
  EXPECT_LT(max_abs(b.effect(0) - projector(s0) / 2.0), 1e-15);
  EXPECT_LT(max_abs(b.effect(1) - projector(s0) / 2.0), 1e-15);
  EXPECT_EQ(b.support_dim, 1u);
}

TEST(Pgm, PovmBlockCompleteness) {
  Rng rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint64_t n = 2 + rng.below(7);
    const int k = 1 + static_cast<int>(rng.below(6));
    const auto x = BlockLabel::uniform(rng, n, k);
    const auto block = povm_block(x);
    DenseOperator support = DenseOperator::Zero(block.total().rows(), block.total().cols());
    for (std::uint64_t p = 0; p < n; ++p) support += projector(superposition_vector(x, p));
    EXPECT_LT(max_abs(block.total() - support), 1e-12);
    EXPECT_LT(max_abs(block.total() + block.completion() - DenseOperator::Identity(support.rows(), support.cols())), 1e-12);
    EXPECT_EQ(static_cast<Eigen::Index>(block.support_dim), static_cast<Eigen::Index>(std::round(support.trace().real())));
  }
}

TEST(Pgm, GramRankAndTrace) {
  EXPECT_TRUE(gram_rank(2, 1) == 3);
  for (std::uint64_t n = 2; n <= 4; ++n) {
    for (int k = 1; k <= 3; ++k) {
      const auto g = gram_operator(n, k);
      double trace = 0.0;
      Count brute_rank = 0;
      for (std::uint64_t flat = 0; flat < static_cast<std::uint64_t>(std::pow(n, k)); ++flat) {
        const auto x = BlockLabel::from_flat(flat, n, k);
        trace += g.block(x).trace().real();
        for (auto c : oracle::eta(n, {x.values().begin(), x.values().end()})) brute_rank += c > 0 ? 1 : 0;
      }
      EXPECT_NEAR(trace, static_cast<double>(n), 1e-12);
      EXPECT_TRUE(gram_rank(n, k) == brute_rank);
      ASSERT_TRUE(g.rank.has_value());
      EXPECT_TRUE(*g.rank == brute_rank);
    }
  }
  // Dense cross-check of rank G = 3 at N=2, k=1.
  DenseOperator g = DenseOperator::Zero(4, 4);
  for (const auto& s : dihedral_states(2, 1)) g += s;
  EXPECT_EQ(numerical_rank(g, 1e-10), 3u);
}

TEST(Pgm, PgmDenseExamples) {
  StateVector a = StateVector::Zero(3), b = StateVector::Zero(3);
  a(0) = 1.0;
  b(2) = 1.0;
  const std::vector<DenseOperator> states{projector(a), projector(b)};
  const auto effects = pgm_dense(states, uniform(2));
  EXPECT_LT(max_abs(effects[0] - states[0]), 1e-12);
  EXPECT_LT(max_abs(effects[1] - states[1]), 1e-12);

  DenseOperator mixed = DenseOperator::Zero(3, 3);
  mixed(0, 0) = 0.25;
  mixed(1, 1) = 0.75;
  const std::vector<DenseOperator> one{mixed};
  const std::vector<double> prior{1.0};
  const auto single = pgm_dense(one, prior);
  EXPECT_LT(max_abs(single[0] - support_projector(mixed, 1e-10)), 1e-12);

  EXPECT_THROW(pgm_dense(states, std::vector<double>{0.5, 0.6}), std::invalid_argument);
  const std::vector<DenseOperator> bad{projector(a), DenseOperator::Identity(2, 2)};
  EXPECT_THROW(pgm_dense(bad, uniform(2)), std::invalid_argument);
}

TEST(Pgm, PgmDenseMatchesOracleAndClosedForm) {
  for (std::uint64_t n = 2; n <= 6; ++n) {
    for (int k = 1; k <= 2; ++k) {
      if (std::pow(2.0 * n, k) > 256) continue;
      const auto states = dihedral_states(n, k);
      const auto generic = pgm_dense(states, uniform(n));
      const auto closed = dihedral_pgm_dense(n, k);
      std::vector<oracle::Mat> ref_states;
      for (std::uint64_t d = 0; d < n; ++d) ref_states.push_back(oracle::shift_state(n, k, d));
      const auto ref = oracle::square_root_measurement(ref_states);
      for (std::uint64_t j = 0; j < n; ++j) {
        EXPECT_LT(max_abs(generic[j] - closed[j]), 1e-10) << n << " " << k << " " << j;
        EXPECT_LT(max_abs(ref[j] - closed[j]), 1e-10) << n << " " << k << " " << j;
      }
      EXPECT_LT(pgm_closed_form_gap(n, k), 1e-10);
    }
  }
}

TEST(Pgm, GlobalCompleteness) {
  for (std::uint64_t n = 2; n <= 4; ++n) {
    for (int k = 1; k <= 2; ++k) {
      const auto effects = dihedral_pgm_dense(n, k);
      DenseOperator total = DenseOperator::Zero(effects[0].rows(), effects[0].cols());
      for (const auto& e : effects) {
        total += e;
        EXPECT_GE(hermitian_eigenvalues(e).minCoeff(), -1e-10);
      }
      const DenseOperator trivial_effect = DenseOperator::Identity(total.rows(), total.cols()) - total;
      EXPECT_GE(hermitian_eigenvalues(trivial_effect).minCoeff(), -1e-10);
      DenseOperator g = DenseOperator::Zero(total.rows(), total.cols());
      for (const auto& s : dihedral_states(n, k)) g += s;
      EXPECT_LT(max_abs(total - support_projector(g, 1e-10)), 1e-10);
    }
  }
}

TEST(Pgm, HolevoPassesForDihedralPgm) {
  for (std::uint64_t n = 2; n <= 6; ++n) {
    for (int k = 1; k <= 2; ++k) {
      if (std::pow(2.0 * n, k) > 256) continue;
      const auto states = dihedral_states(n, k);
      const auto effects = dihedral_pgm_dense(n, k);
      const auto report = verify_holevo(states, uniform(n), effects);
      EXPECT_TRUE(report.passed) << n << " " << k << "\n" << report.to_text("dense");
      EXPECT_EQ(report.lagrangian.rows(), states[0].rows());
      EXPECT_TRUE(certify_dihedral_pgm(n, k).passed);
    }
  }
}

TEST(Pgm, HolevoRejectsPermutedEffects) {
  for (std::uint64_t n = 2; n <= 4; ++n) {
    const auto states = dihedral_states(n, 1);
    auto effects = dihedral_pgm_dense(n, 1);
    std::rotate(effects.begin(), effects.begin() + 1, effects.end());
    const auto report = verify_holevo(states, uniform(n), effects);
    EXPECT_FALSE(report.passed);
    EXPECT_LT(report.dominance_min_eigenvalue, -1e-9);
    EXPECT_FALSE(certify_dihedral_pgm(n, 1, 1e-9, true).passed);
  }
}

TEST(Pgm, HolevoOrthogonalStates) {
  StateVector a = StateVector::Zero(2), b = StateVector::Zero(2);
  a(0) = 1.0;
  b(1) = 1.0;
  const std::vector<DenseOperator> states{projector(a), projector(b)};
  const auto report = verify_holevo(states, uniform(2), states);
  EXPECT_TRUE(report.passed);
  EXPECT_EQ(report.lagrangian_hermiticity_residual, 0.0);
}

TEST(Pgm, HolevoRejectsNonPovm) {
  StateVector a = StateVector::Zero(2), b = StateVector::Zero(2);
  a(0) = 1.0;
  b(1) = 1.0;
  const std::vector<DenseOperator> states{projector(a), projector(b)};
  DenseOperator negative = projector(a);
  negative(0, 0) = -0.5;
  const std::vector<DenseOperator> not_psd{negative, projector(b)};
  try {
    verify_holevo(states, uniform(2), not_psd);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("positive semidefinite"), std::string::npos);
  }
  const std::vector<DenseOperator> partial{projector(a), DenseOperator::Zero(2, 2)};
  try {
    verify_holevo(states, uniform(2), partial);
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("resolve"), std::string::npos);
  }
}

TEST(Pgm, ReportText) {
  OptimalityReport r;
  r.lagrangian_hermiticity_residual = 0.0;
  r.dominance_min_eigenvalue = -1.0;
  r.tolerance = 1e-9;
  EXPECT_EQ(r.to_text("x"), "x hermiticity 0.000000e+00 1.0e-09 PASS\nx dominance -1.000000e+00 1.0e-09 FAIL\n");
}

TEST(Pgm, LsbAggregation) {
  for (int k = 1; k <= 2; ++k) {
    const auto lsb = lsb_povm(4, k);
    for (std::uint64_t flat = 0; flat < static_cast<std::uint64_t>(std::pow(4, k)); ++flat) {
      const auto x = BlockLabel::from_flat(flat, 4, k);
      const auto block = povm_block(x);
      const auto [plus, minus] = lsb.block(x);
      EXPECT_LT(max_abs(plus - block.effect(0) - block.effect(2)), 1e-12);
      EXPECT_LT(max_abs(minus - block.effect(1) - block.effect(3)), 1e-12);
    }
  }
}

TEST(Pgm, LsbSmallestCase) {
  // N=2: r + N/2 pairs 0 with 1, so E_- = E_1 and E_+ = E_0.
  const auto [plus, minus] = lsb_povm(2, 1).block(BlockLabel({1}, 2));
  const auto block = povm_block(BlockLabel({1}, 2));
  EXPECT_LT(max_abs(plus - block.effect(0)), 1e-15);
  EXPECT_LT(max_abs(minus - block.effect(1)), 1e-15);
  EXPECT_LT(max_abs(plus + minus - DenseOperator::Identity(2, 2)), 1e-15);
}

TEST(Pgm, LsbOptimality) {
  for (int k = 1; k <= 2; ++k) {
    EXPECT_TRUE(certify_lsb_pgm(4, k).passed);
    EXPECT_TRUE(certify_lsb_pgm(2, k).passed);
  }
  // Dense two-state check at N=4, k=1.
  const auto states = dihedral_states(4, 1);
  const auto effects = dihedral_pgm_dense(4, 1);
  const std::vector<DenseOperator> rho{(states[0] + states[2]) / 2.0, (states[1] + states[3]) / 2.0};
  const std::vector<DenseOperator> e{effects[0] + effects[2], effects[1] + effects[3]};
  EXPECT_TRUE(verify_holevo(rho, uniform(2), e).passed);
  for (const auto& r : rho) {
    DenseOperator lagrangian = (rho[0] * e[0] + rho[1] * e[1]) / 2.0;
    EXPECT_GE(hermitian_eigenvalues(lagrangian - r / 2.0).minCoeff(), -1e-10);
  }
  EXPECT_THROW(lsb_povm(3, 1), std::invalid_argument);
}

TEST(Pgm, Guards) {
  EXPECT_THROW(dihedral_pgm_dense(9, 4), GuardError);
  EXPECT_THROW(gram_rank(64, 5), GuardError);
}
