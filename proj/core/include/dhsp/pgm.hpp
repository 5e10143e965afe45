#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dhsp/count.hpp"
#include "dhsp/dihedral.hpp"
#include "dhsp/linalg.hpp"

namespace dhsp {

/// Relative eigenvalue cutoff for pseudo-inverses and supports.
inline constexpr double kSupportCutoff = 1e-10;

/// Rank-one effects E_j^x = e_j e_j^dagger of one block, with
/// e_j = N^{-1/2} sum_p omega^{jp} |S_p^x>.
struct PovmBlock {
  BlockLabel x;
  std::vector<StateVector> effect_vectors;
  std::size_t support_dim = 0;

  DenseOperator effect(std::uint64_t j) const { return outer(effect_vectors[j]); }
  /// sum_j E_j^x.
  DenseOperator total() const;
  /// I - sum_j E_j^x restricted to this block: its share of the trivial-subgroup effect.
  DenseOperator completion() const;
};

PovmBlock povm_block(const BlockLabel& x);

/// G = sum_j rho_j^{(x)k}, described per block.
struct GramDescription {
  std::uint64_t n = 0;
  int k = 0;
  /// |{(x, p) : eta_p^x > 0}|; present only when built eagerly.
  std::optional<Count> rank;

  /// (N / (2N)^k) sum_r eta_r |S_r><S_r| on block x.
  DenseOperator block(const BlockLabel& x) const;
};

/// Eager mode (exact rank) when N^k <= 2^22, otherwise lazy.
GramDescription gram_operator(std::uint64_t n, int k);

/// Exact rank G by enumeration; throws GuardError above N^k = 2^26.
Count gram_rank(std::uint64_t n, int k);

/// Square-root measurement E_i = G^{-1/2} p_i rho_i G^{-1/2}, G = sum_i p_i rho_i,
/// with the inverse taken on the support of G.
std::vector<DenseOperator> pgm_dense(std::span<const DenseOperator> states,
                                     std::span<const double> priors);

struct OptimalityReport {
  /// max |sum_i p_i rho_i E_i - sum_i p_i E_i rho_i|
  double lagrangian_hermiticity_residual = 0.0;
  /// min over j of the smallest eigenvalue of sum_i p_i rho_i E_i - p_j rho_j
  double dominance_min_eigenvalue = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  /// sum_i p_i rho_i E_i (empty for aggregated block reports).
  DenseOperator lagrangian;

  /// Combines with another report over an orthogonal block.
  void merge(const OptimalityReport& other);
  void finalize();

  /// Two lines, "<condition> <value> <tol> PASS|FAIL", prefixed by label.
  std::string to_text(const std::string& label) const;
};

/// Holevo / Yuen-Kennedy-Lax conditions. Throws std::invalid_argument naming
/// the violated property when the effects are not a POVM on the support.
OptimalityReport verify_holevo(std::span<const DenseOperator> states,
                               std::span<const double> priors,
                               std::span<const DenseOperator> effects, double tol = 1e-9);

/// Block of rho_j^{(x)k} on x at its global weight: (2N)^{-k} |rho^x_j><rho^x_j|
/// with the unnormalized |rho^x_j> = sum_p omega^{jp} sqrt(eta_p) |S_p>.
std::vector<DenseOperator> dihedral_block_states(const BlockLabel& x);

/// Closed-form effects E_0..E_{N-1} assembled into the full tilde basis.
std::vector<DenseOperator> dihedral_pgm_dense(std::uint64_t n, int k);

/// Certifies the closed-form PGM for every block of Z_N^k; blocks are
/// independent, so the aggregate equals the full-space conditions. With
/// permute_effects, E_{j+1} is paired with rho_j (negative control).
OptimalityReport certify_dihedral_pgm(std::uint64_t n, int k, double tol = 1e-9,
                                      bool permute_effects = false);

/// Largest entrywise gap between pgm_dense and the closed form; dense on the
/// full space when (2N)^k <= 256, blockwise beyond that.
double pgm_closed_form_gap(std::uint64_t n, int k);

/// E_+^x, E_-^x = (1/2) sum_r (|S_r><S_r| +- |S_r><S_{r+N/2}|), which is
/// sum over even / odd d of E_d^x.
struct LsbPovm {
  std::uint64_t n = 0;
  int k = 0;
  std::pair<DenseOperator, DenseOperator> block(const BlockLabel& x) const;
};

/// Throws std::invalid_argument("N must be even") for odd N.
LsbPovm lsb_povm(std::uint64_t n, int k);

/// Blocks of rho_+ and rho_- = (2/N) sum_{d even/odd} rho_d^{(x)k} on x.
std::pair<DenseOperator, DenseOperator> lsb_block_states(const BlockLabel& x);

OptimalityReport certify_lsb_pgm(std::uint64_t n, int k, double tol = 1e-9);

}  // namespace dhsp
