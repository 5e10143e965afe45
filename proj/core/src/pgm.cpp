#include "dhsp/pgm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "dhsp/errors.hpp"
#include "dhsp/subset_sum.hpp"

namespace dhsp {

namespace {

/// b . x for every b, plus the counts.
struct BlockSums {
  std::vector<std::uint64_t> sums;
  SubsetProfile profile;
};

BlockSums block_sums(const BlockLabel& x) {
  if (x.k() > kMaxEnumerationBits) throw GuardError("block needs 2^k <= 2^24");
  const std::uint64_t dim = std::uint64_t{1} << x.k();
  BlockSums out{std::vector<std::uint64_t>(dim), count_eta(x)};
  for (std::uint64_t b = 0; b < dim; ++b) out.sums[b] = x.dot(b);
  return out;
}

double weight_per_block(std::uint64_t n, int k) { return std::pow(2.0 * static_cast<double>(n), -k); }

void check_same_dims(std::span<const DenseOperator> ops, Eigen::Index dim, const char* what) {
  for (const auto& op : ops) {
    if (op.rows() != dim || op.cols() != dim) {
      throw std::invalid_argument(std::string("dimension mismatch in ") + what);
    }
  }
}

}  // namespace

DenseOperator PovmBlock::total() const {
  const auto dim = effect_vectors.front().size();
  DenseOperator sum = DenseOperator::Zero(dim, dim);
  for (const auto& e : effect_vectors) sum += outer(e);
  return sum;
}

DenseOperator PovmBlock::completion() const {
  const auto dim = effect_vectors.front().size();
  return DenseOperator::Identity(dim, dim) - total();
}

PovmBlock povm_block(const BlockLabel& x) {
  const auto blk = block_sums(x);
  const PhaseTable omega(x.n());
  const auto dim = static_cast<Eigen::Index>(blk.sums.size());
  const double norm = 1.0 / std::sqrt(static_cast<double>(x.n()));

  std::vector<double> amp(blk.profile.eta.size());
  for (std::size_t p = 0; p < amp.size(); ++p) {
    const auto c = blk.profile.eta[p];
    amp[p] = c > 0 ? norm / std::sqrt(to_double(c)) : 0.0;
  }
  PovmBlock block{x, {}, blk.profile.support_size};
  block.effect_vectors.reserve(x.n());
  for (std::uint64_t j = 0; j < x.n(); ++j) {
    StateVector e(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
      const auto p = blk.sums[static_cast<std::size_t>(b)];
      e[b] = amp[p] * omega(static_cast<std::int64_t>(j * p));
    }
    block.effect_vectors.push_back(std::move(e));
  }
  return block;
}

DenseOperator GramDescription::block(const BlockLabel& x) const {
  if (x.n() != n || x.k() != k) throw std::invalid_argument("block label does not match G");
  const auto blk = block_sums(x);
  const auto dim = static_cast<Eigen::Index>(blk.sums.size());
  // eta_r |S_r><S_r| has every entry equal to 1 on S_r x S_r.
  const double scale = static_cast<double>(n) * weight_per_block(n, k);
  DenseOperator g = DenseOperator::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      if (blk.sums[static_cast<std::size_t>(b)] == blk.sums[static_cast<std::size_t>(c)]) {
        g(b, c) = scale;
      }
    }
  }
  return g;
}

namespace {

double label_count(std::uint64_t n, int k) { return std::pow(static_cast<double>(n), k); }

}  // namespace

Count gram_rank(std::uint64_t n, int k) {
  if (label_count(n, k) > 0x1.0p26) throw GuardError("rank enumeration needs N^k <= 2^26");
  Count rank = 0;
  for_each_profile(n, k, [&](std::span<const std::uint64_t>, std::span<const Count> eta) {
    for (auto c : eta) rank += c > 0 ? 1 : 0;
  });
  return rank;
}

GramDescription gram_operator(std::uint64_t n, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  GramDescription g{n, k, std::nullopt};
  if (label_count(n, k) <= 0x1.0p22) g.rank = gram_rank(n, k);
  return g;
}

std::vector<DenseOperator> pgm_dense(std::span<const DenseOperator> states,
                                     std::span<const double> priors) {
  if (states.empty()) throw std::invalid_argument("empty ensemble");
  if (states.size() != priors.size()) throw std::invalid_argument("dimension mismatch: priors");
  const auto dim = states.front().rows();
  if (dim > 256) throw GuardError("pgm_dense needs dim <= 256");
  check_same_dims(states, dim, "states");
  double total = 0.0;
  for (double p : priors) {
    if (p < 0) throw std::invalid_argument("priors must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("priors must sum to 1");

  DenseOperator g = DenseOperator::Zero(dim, dim);
  for (std::size_t i = 0; i < states.size(); ++i) g += priors[i] * states[i];
  const DenseOperator root = pinv_sqrt(g, kSupportCutoff);
  std::vector<DenseOperator> effects;
  effects.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    effects.push_back(root * (priors[i] * states[i]) * root);
  }
  return effects;
}

void OptimalityReport::merge(const OptimalityReport& other) {
  lagrangian_hermiticity_residual =
      std::max(lagrangian_hermiticity_residual, other.lagrangian_hermiticity_residual);
  dominance_min_eigenvalue = std::min(dominance_min_eigenvalue, other.dominance_min_eigenvalue);
  tolerance = std::max(tolerance, other.tolerance);
  lagrangian.resize(0, 0);
  finalize();
}

void OptimalityReport::finalize() {
  passed = lagrangian_hermiticity_residual <= tolerance && dominance_min_eigenvalue >= -tolerance;
}

std::string OptimalityReport::to_text(const std::string& label) const {
  const bool hermitian = lagrangian_hermiticity_residual <= tolerance;
  const bool dominant = dominance_min_eigenvalue >= -tolerance;
  return fmt::format("{} hermiticity {:.6e} {:.1e} {}\n{} dominance {:.6e} {:.1e} {}\n", label,
                     lagrangian_hermiticity_residual, tolerance, hermitian ? "PASS" : "FAIL",
                     label, dominance_min_eigenvalue, tolerance, dominant ? "PASS" : "FAIL");
}

OptimalityReport verify_holevo(std::span<const DenseOperator> states,
                               std::span<const double> priors,
                               std::span<const DenseOperator> effects, double tol) {
  if (states.empty()) throw std::invalid_argument("empty ensemble");
  if (states.size() != priors.size() || states.size() != effects.size()) {
    throw std::invalid_argument("dimension mismatch: ensemble and effect counts differ");
  }
  const auto dim = states.front().rows();
  check_same_dims(states, dim, "states");
  check_same_dims(effects, dim, "effects");

  DenseOperator effect_sum = DenseOperator::Zero(dim, dim);
  for (std::size_t j = 0; j < effects.size(); ++j) {
    if (hermitian_eigenvalues(effects[j]).minCoeff() < -tol) {
      throw std::invalid_argument("effect " + std::to_string(j) + " is not positive semidefinite");
    }
    effect_sum += effects[j];
  }
  if (hermitian_eigenvalues(effect_sum).maxCoeff() > 1.0 + tol) {
    throw std::invalid_argument("effects sum to more than the identity");
  }
  DenseOperator average = DenseOperator::Zero(dim, dim);
  for (std::size_t i = 0; i < states.size(); ++i) average += priors[i] * states[i];
  const DenseOperator support = support_projector(average, kSupportCutoff);
  if (max_abs(effect_sum * support - support) > tol) {
    throw std::invalid_argument("effects do not resolve the support of the ensemble");
  }

  OptimalityReport report;
  report.tolerance = tol;
  report.lagrangian = DenseOperator::Zero(dim, dim);
  for (std::size_t i = 0; i < states.size(); ++i) {
    report.lagrangian += priors[i] * states[i] * effects[i];
  }
  report.lagrangian_hermiticity_residual = max_abs(report.lagrangian - report.lagrangian.adjoint());
  report.dominance_min_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < states.size(); ++j) {
    const double low = hermitian_eigenvalues(report.lagrangian - priors[j] * states[j]).minCoeff();
    report.dominance_min_eigenvalue = std::min(report.dominance_min_eigenvalue, low);
  }
  report.finalize();
  return report;
}

std::vector<DenseOperator> dihedral_block_states(const BlockLabel& x) {
  const auto blk = block_sums(x);
  const PhaseTable omega(x.n());
  const double weight = weight_per_block(x.n(), x.k());
  const auto dim = static_cast<Eigen::Index>(blk.sums.size());
  std::vector<DenseOperator> states;
  states.reserve(x.n());
  for (std::uint64_t j = 0; j < x.n(); ++j) {
    StateVector v(dim);
    for (Eigen::Index b = 0; b < dim; ++b) {
      v[b] = omega(static_cast<std::int64_t>(j * blk.sums[static_cast<std::size_t>(b)]));
    }
    states.push_back(weight * outer(v));
  }
  return states;
}

std::vector<DenseOperator> dihedral_pgm_dense(std::uint64_t n, int k) {
  const auto dim = static_cast<Eigen::Index>(oracle_dimension(n, k));
  const auto bits = Eigen::Index{1} << k;
  std::vector<DenseOperator> effects(n, DenseOperator::Zero(dim, dim));
  const std::uint64_t blocks = static_cast<std::uint64_t>(dim) >> k;
  for (std::uint64_t flat = 0; flat < blocks; ++flat) {
    const auto block = povm_block(BlockLabel::from_flat(flat, n, k));
    const auto offset = static_cast<Eigen::Index>(tilde_index(flat, 0, k));
    for (std::uint64_t j = 0; j < n; ++j) {
      effects[j].block(offset, offset, bits, bits) = block.effect(j);
    }
  }
  return effects;
}

OptimalityReport certify_dihedral_pgm(std::uint64_t n, int k, double tol, bool permute_effects) {
  const std::uint64_t blocks = static_cast<std::uint64_t>(oracle_dimension(n, k)) >> k;
  const std::vector<double> priors(n, 1.0 / static_cast<double>(n));
  OptimalityReport total;
  total.tolerance = tol;
  total.dominance_min_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::uint64_t flat = 0; flat < blocks; ++flat) {
    const auto x = BlockLabel::from_flat(flat, n, k);
    const auto states = dihedral_block_states(x);
    const auto povm = povm_block(x);
    std::vector<DenseOperator> effects;
    effects.reserve(n);
    for (std::uint64_t j = 0; j < n; ++j) {
      effects.push_back(povm.effect(permute_effects ? (j + 1) % n : j));
    }
    total.merge(verify_holevo(states, priors, effects, tol));
  }
  return total;
}

double pgm_closed_form_gap(std::uint64_t n, int k) {
  const std::size_t dim = oracle_dimension(n, k);
  const std::vector<double> priors(n, 1.0 / static_cast<double>(n));
  double gap = 0.0;
  if (dim <= 256) {
    std::vector<DenseOperator> states;
    for (std::uint64_t d = 0; d < n; ++d) states.push_back(dense_state(Hidden::shift(d), k, n));
    const auto generic = pgm_dense(states, priors);
    const auto closed = dihedral_pgm_dense(n, k);
    for (std::uint64_t j = 0; j < n; ++j) gap = std::max(gap, max_abs(generic[j] - closed[j]));
    return gap;
  }
  const std::uint64_t blocks = static_cast<std::uint64_t>(dim) >> k;
  for (std::uint64_t flat = 0; flat < blocks; ++flat) {
    const auto x = BlockLabel::from_flat(flat, n, k);
    const auto generic = pgm_dense(dihedral_block_states(x), priors);
    const auto povm = povm_block(x);
    for (std::uint64_t j = 0; j < n; ++j) gap = std::max(gap, max_abs(generic[j] - povm.effect(j)));
  }
  return gap;
}

LsbPovm lsb_povm(std::uint64_t n, int k) {
  if (n % 2 != 0) throw std::invalid_argument("N must be even");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  return {n, k};
}

std::pair<DenseOperator, DenseOperator> LsbPovm::block(const BlockLabel& x) const {
  if (x.n() != n || x.k() != k) throw std::invalid_argument("block label does not match POVM");
  const auto blk = block_sums(x);
  const auto dim = static_cast<Eigen::Index>(blk.sums.size());
  const std::uint64_t half = n / 2;
  DenseOperator diag = DenseOperator::Zero(dim, dim);
  DenseOperator cross = DenseOperator::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const auto p = blk.sums[static_cast<std::size_t>(b)];
    const double eta_p = to_double(blk.profile.eta[p]);
    for (Eigen::Index c = 0; c < dim; ++c) {
      const auto q = blk.sums[static_cast<std::size_t>(c)];
      if (q == p) diag(b, c) = 0.5 / eta_p;
      if (q == (p + half) % n) {
        cross(b, c) = 0.5 / std::sqrt(eta_p * to_double(blk.profile.eta[q]));
      }
    }
  }
  return {diag + cross, diag - cross};
}

std::pair<DenseOperator, DenseOperator> lsb_block_states(const BlockLabel& x) {
  if (x.n() % 2 != 0) throw std::invalid_argument("N must be even");
  const auto states = dihedral_block_states(x);
  const auto dim = states.front().rows();
  DenseOperator even = DenseOperator::Zero(dim, dim);
  DenseOperator odd = DenseOperator::Zero(dim, dim);
  const double scale = 2.0 / static_cast<double>(x.n());
  for (std::size_t d = 0; d < states.size(); ++d) (d % 2 == 0 ? even : odd) += scale * states[d];
  return {even, odd};
}

OptimalityReport certify_lsb_pgm(std::uint64_t n, int k, double tol) {
  const auto povm = lsb_povm(n, k);
  const std::uint64_t blocks = static_cast<std::uint64_t>(oracle_dimension(n, k)) >> k;
  const std::vector<double> priors{0.5, 0.5};
  OptimalityReport total;
  total.tolerance = tol;
  total.dominance_min_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::uint64_t flat = 0; flat < blocks; ++flat) {
    const auto x = BlockLabel::from_flat(flat, n, k);
    const auto [rho_plus, rho_minus] = lsb_block_states(x);
    const auto [e_plus, e_minus] = povm.block(x);
    const std::vector<DenseOperator> states{rho_plus, rho_minus};
    const std::vector<DenseOperator> effects{e_plus, e_minus};
    total.merge(verify_holevo(states, priors, effects, tol));
  }
  return total;
}

}  // namespace dhsp
