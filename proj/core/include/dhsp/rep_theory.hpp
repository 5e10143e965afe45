#pragma once

#include <cstdint>
#include <vector>

#include "dhsp/dihedral.hpp"
#include "dhsp/linalg.hpp"

namespace dhsp {

enum class IrrepKind { kTwoDim, kTrivial, kAlternating, kEven, kOdd };

/// x is meaningful only for kTwoDim, where 1 <= x <= ceil(N/2) - 1.
struct IrrepLabel {
  IrrepKind kind = IrrepKind::kTrivial;
  std::uint64_t x = 0;

  int dim() const { return kind == IrrepKind::kTwoDim ? 2 : 1; }
  friend bool operator==(const IrrepLabel&, const IrrepLabel&) = default;
};

/// Two-dimensional irreps by increasing x, then trivial, alternating, and
/// (N even) even, odd.
std::vector<IrrepLabel> irrep_labels(std::uint64_t n);

/// Gamma(s^k) = diag(w^{xk}, w^{-xk}), Gamma(r s^k) = [[0, w^{-xk}], [w^{xk}, 0]].
/// One-dimensional: 1, (-1)^t, (-1)^k, (-1)^{t+k}.
DenseOperator irrep(const IrrepLabel& label, const DihedralElement& g);

Complex character(const IrrepLabel& label, const DihedralElement& g);

/// D_L(g)|h> = |gh> and D_R(g)|h> = |h g^-1> in the group basis.
DenseOperator left_regular(const DihedralElement& g);
DenseOperator right_regular(const DihedralElement& g);

/// Rows (x, l, m) in irrep_labels order, row-major in (l, m); columns g in
/// group-basis order. Entry sqrt(d_x / 2N) Gamma_x(g)_{lm}. Guard: 2N <= 1024.
DenseOperator qft_dihedral(std::uint64_t n);

/// First row of each irrep's block in qft_dihedral.
std::vector<std::size_t> irrep_offsets(std::uint64_t n);

struct IrrepComponent {
  IrrepLabel label;
  double probability = 0.0;
  /// sum_h Gamma_x(h) / sum_h chi_x(h); empty when probability is zero.
  DenseOperator column_state;
};

/// Q rho_H Q^dagger is block diagonal with blocks I/d_x (x) p(x) column_state^T.
/// The errors measure how far the conjugated dense state is from that form.
struct IrrepDecomposition {
  std::vector<IrrepComponent> components;
  double off_block_error = 0.0;
  double block_form_error = 0.0;
};

IrrepDecomposition hidden_state_in_irrep_basis(const Subgroup& h, std::uint64_t n);

struct EquivalenceReport {
  std::vector<double> label_probs;
  std::vector<DenseOperator> column_states;
  double total_variation = 0.0;
  double max_trace_distance = 0.0;
  double distance = 0.0;
  bool passed = false;
};

/// Runs the irrep-basis measurement on one copy of rho_d and compares the
/// resulting (label, column state) distribution with the tilde-basis block
/// decomposition. Column identification: for a two-dimensional irrep the
/// column basis vector m is identified with |1 - m>; row 0 reports x and
/// row 1 reports -x after X on the column. The pair {trivial, alternating}
/// reports 0 and {even, odd} reports N/2, with the first of each pair as
/// |+> and the second as |->.
EquivalenceReport equivalence_check(std::uint64_t n, std::uint64_t d, double tol = 1e-9);

}  // namespace dhsp
