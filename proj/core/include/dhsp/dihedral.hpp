#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dhsp/linalg.hpp"

namespace dhsp {

class Rng;

/// r^t s^k in D_N, stored as (t mod 2, k mod N).
struct DihedralElement {
  std::uint32_t t = 0;
  std::uint64_t k = 0;
  std::uint64_t n = 1;

  static DihedralElement make(std::int64_t t, std::int64_t k, std::uint64_t n);
  static DihedralElement identity(std::uint64_t n) { return {0, 0, n}; }

  /// Position in the group basis |t, k>: t * N + k.
  std::size_t index() const { return static_cast<std::size_t>(t * n + k); }

  friend bool operator==(const DihedralElement&, const DihedralElement&) = default;
  friend auto operator<=>(const DihedralElement&, const DihedralElement&) = default;
};

/// a * b with a = r^{t'} s^{k'}, b = r^t s^k: r^{t+t'} s^{k + (-1)^t k'}.
DihedralElement multiply(const DihedralElement& a, const DihedralElement& b);
DihedralElement inverse(const DihedralElement& a);

std::vector<DihedralElement> group_elements(std::uint64_t n);

enum class SubgroupKind { kTrivial, kOrder2, kCyclic, kDihedral };

/// One of the subgroups C_{N/j} = <s^j> or D_{N/j,d} = <s^j, r s^d>.
struct Subgroup {
  SubgroupKind kind = SubgroupKind::kTrivial;
  std::uint64_t j = 0;
  std::uint64_t d = 0;

  static Subgroup trivial() { return {SubgroupKind::kTrivial, 0, 0}; }
  static Subgroup order2(std::uint64_t d) { return {SubgroupKind::kOrder2, 0, d}; }
  static Subgroup cyclic(std::uint64_t j) { return {SubgroupKind::kCyclic, j, 0}; }
  static Subgroup dihedral(std::uint64_t j, std::uint64_t d) {
    return {SubgroupKind::kDihedral, j, d};
  }
};

/// Sorted element list. Throws std::invalid_argument when j does not divide N.
std::vector<DihedralElement> subgroup_elements(const Subgroup& h, std::uint64_t n);

/// Hidden subgroup of the restricted problem: {e, r s^d} or the trivial group.
class Hidden {
 public:
  static Hidden trivial() { return Hidden(std::nullopt); }
  static Hidden shift(std::uint64_t d) { return Hidden(d); }

  bool is_trivial() const { return !d_.has_value(); }
  std::uint64_t d() const { return d_.value(); }

  friend bool operator==(const Hidden&, const Hidden&) = default;

 private:
  explicit Hidden(std::optional<std::uint64_t> d) : d_(d) {}
  std::optional<std::uint64_t> d_;
};

/// Fourier labels x in Z_N^k, one per copy. flat_index() is the lexicographic
/// rank with x_1 most significant.
class BlockLabel {
 public:
  BlockLabel(std::vector<std::uint64_t> values, std::uint64_t n);

  static BlockLabel from_flat(std::uint64_t flat, std::uint64_t n, int k);
  static BlockLabel uniform(Rng& rng, std::uint64_t n, int k);

  std::uint64_t n() const { return n_; }
  int k() const { return static_cast<int>(values_.size()); }
  std::uint64_t operator[](std::size_t j) const { return values_[j]; }
  std::span<const std::uint64_t> values() const { return values_; }

  std::uint64_t flat_index() const;

  /// b . x mod N, with b little-endian (bit j-1 is b_j).
  std::uint64_t dot(std::uint64_t bits) const;

  friend bool operator==(const BlockLabel&, const BlockLabel&) = default;

 private:
  std::vector<std::uint64_t> values_;
  std::uint64_t n_;
};

/// Pure conditional state |rho^x_d> of one block, or the flat trivial block.
struct BlockState {
  BlockLabel label;
  Hidden hidden;
  StateVector amplitudes;  // empty when hidden is trivial

  bool is_trivial() const { return hidden.is_trivial(); }
};

/// (|0,k> + |1,-k+d>) / sqrt 2 in the group basis.
StateVector coset_state_group_basis(std::uint64_t k, std::uint64_t d, std::uint64_t n);

/// rho_H = (|H|/|G|) sum over cosets |gH><gH| in the group basis (dim 2N).
DenseOperator hidden_subgroup_state(const Subgroup& h, std::uint64_t n);

/// Inverse Z_N Fourier transform on the rotation register when the
/// reflection bit is 0, forward transform when it is 1.
DenseOperator tilde_basis_change(std::uint64_t n);

BlockState block_state(const BlockLabel& x, Hidden hidden);

/// Position of |b, x> in the k-copy tilde basis: flat(x) * 2^k + b.
inline std::size_t tilde_index(std::uint64_t flat_x, std::uint64_t bits, int k) {
  return static_cast<std::size_t>((flat_x << k) | bits);
}

/// Full rho^{(x)k} in the tilde basis ordered by tilde_index. Guard: (2N)^k <= 4096.
DenseOperator dense_state(Hidden hidden, int k, std::uint64_t n);

/// (2N)^k when it is at most kOracleDim; throws GuardError otherwise.
std::size_t oracle_dimension(std::uint64_t n, int k);

}  // namespace dhsp
