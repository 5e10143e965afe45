#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dhsp/count.hpp"
#include "dhsp/dihedral.hpp"
#include "dhsp/linalg.hpp"

namespace dhsp {

class Rng;

/// Largest 2^k any explicit enumeration or 2^k-length vector may reach.
inline constexpr int kMaxEnumerationBits = 24;

struct SubsetSumInstance {
  BlockLabel x;
  std::uint64_t target = 0;
};

/// eta[r] = number of b in Z_2^k with b . x = r (mod N).
struct SubsetProfile {
  BlockLabel x;
  std::vector<Count> eta;
  std::size_t support_size = 0;
};

SubsetProfile count_eta(const BlockLabel& x);

/// Reusable buffers for counting many labels of the same (N, k).
class EtaCounter {
 public:
  explicit EtaCounter(std::uint64_t n);
  std::span<const Count> count(std::span<const std::uint64_t> x);

 private:
  std::uint64_t n_;
  std::vector<Count> current_;
  std::vector<Count> scratch_;
};

/// One DP step: next[r] = prev[r] + prev[r - xj mod N].
void subset_sum_step(std::span<const Count> prev, std::uint64_t xj, std::span<Count> next);

/// Visits every x in Z_N^k in lexicographic order (x_1 most significant) with
/// its counts, updating the DP incrementally along the enumeration tree.
void for_each_profile(
    std::uint64_t n, int k,
    const std::function<void(std::span<const std::uint64_t>, std::span<const Count>)>& visit);

/// Members of S_r^x in increasing little-endian order. Guard: k <= 24.
std::vector<std::uint64_t> enumerate_subsets(const BlockLabel& x, std::uint64_t r);

/// All DP rows T_0..T_k for one label; used to draw uniform solutions.
class SubsetSumTable {
 public:
  explicit SubsetSumTable(const BlockLabel& x);

  const BlockLabel& label() const { return x_; }
  Count count(int j, std::uint64_t r) const {
    return rows_[static_cast<std::size_t>(j) * x_.n() + r];
  }
  Count solutions(std::uint64_t target) const { return count(x_.k(), target % x_.n()); }

  /// Uniform member of S_target^x by backtracking; throws "no solution" when
  /// the instance is not legal.
  std::uint64_t sample(std::uint64_t target, Rng& rng) const;

 private:
  BlockLabel x_;
  std::vector<Count> rows_;
};

std::uint64_t sample_solution(const SubsetSumInstance& instance, Rng& rng);

/// |S_r^x>, or the zero vector when eta_r = 0. Guard: k <= 24.
StateVector superposition_vector(const BlockLabel& x, std::uint64_t r);

/// Vtilde^x = sum_p |p><S_p^x|, an N x 2^k partial isometry. Each column b has
/// a single nonzero entry in row b . x.
class PartialIsometry {
 public:
  explicit PartialIsometry(SubsetProfile profile);

  const BlockLabel& label() const { return profile_.x; }
  const SubsetProfile& profile() const { return profile_; }
  std::uint64_t rows() const { return profile_.x.n(); }
  std::uint64_t cols() const { return std::uint64_t{1} << profile_.x.k(); }

  double entry(std::uint64_t p, std::uint64_t b) const;
  StateVector row(std::uint64_t p) const;
  StateVector apply(const StateVector& v) const;
  StateVector apply_adjoint(const StateVector& u) const;
  DenseOperator to_dense() const;

 private:
  SubsetProfile profile_;
  std::vector<double> inv_sqrt_eta_;
};

PartialIsometry vtilde(const BlockLabel& x);

/// Unitary of dim N + 2^k with Vtilde^x in its top-left corner:
///   [[Vtilde, Pi_0], [I - P, Vtilde^dagger]]
/// where P = Vtilde^dagger Vtilde and Pi_0 projects onto {p : eta_p = 0}.
/// Rows: p in Z_N, then b in Z_2^k. Columns: b, then the N extension slots.
DenseOperator neumark_complete(const BlockLabel& x);

/// Utilde^dagger |p>: padded |S_p^x> when eta_p > 0, otherwise the
/// extension basis vector at position 2^k + p.
StateVector qsample(const BlockLabel& x, std::uint64_t p);

/// "N k t x_1 ... x_k"; throws std::invalid_argument on malformed input.
SubsetSumInstance parse_instance(std::string_view line);

/// b_1 first.
std::string format_bits(std::uint64_t bits, int k);

}  // namespace dhsp
