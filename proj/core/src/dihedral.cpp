#include "dhsp/dihedral.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

#include "dhsp/errors.hpp"
#include "dhsp/rng.hpp"

namespace dhsp {

namespace {

std::uint64_t mod(std::int64_t value, std::uint64_t n) {
  const auto sn = static_cast<std::int64_t>(n);
  std::int64_t r = value % sn;
  return static_cast<std::uint64_t>(r < 0 ? r + sn : r);
}

}  // namespace

DihedralElement DihedralElement::make(std::int64_t t, std::int64_t k, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("dihedral group needs N >= 1");
  return {static_cast<std::uint32_t>(mod(t, 2)), mod(k, n), n};
}

DihedralElement multiply(const DihedralElement& a, const DihedralElement& b) {
  if (a.n != b.n) throw std::invalid_argument("group mismatch");
  const std::uint64_t n = a.n;
  const std::uint64_t k = b.t == 0 ? (b.k + a.k) % n : (b.k + n - a.k) % n;
  return {(a.t + b.t) % 2, k, n};
}

DihedralElement inverse(const DihedralElement& a) {
  if (a.t == 1) return a;
  return {0, (a.n - a.k) % a.n, a.n};
}

std::vector<DihedralElement> group_elements(std::uint64_t n) {
  std::vector<DihedralElement> all;
  all.reserve(2 * n);
  for (std::uint32_t t = 0; t < 2; ++t) {
    for (std::uint64_t k = 0; k < n; ++k) all.push_back({t, k, n});
  }
  return all;
}

std::vector<DihedralElement> subgroup_elements(const Subgroup& h, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("dihedral group needs N >= 1");
  std::uint64_t step = n;
  bool reflections = false;
  std::uint64_t d = h.d % n;
  switch (h.kind) {
    case SubgroupKind::kTrivial:
      break;
    case SubgroupKind::kOrder2:
      reflections = true;
      break;
    case SubgroupKind::kCyclic:
    case SubgroupKind::kDihedral:
      if (h.j == 0 || n % h.j != 0) {
        throw std::invalid_argument("j = " + std::to_string(h.j) + " does not divide N = " +
                                    std::to_string(n));
      }
      step = h.j;
      reflections = h.kind == SubgroupKind::kDihedral;
      break;
  }
  std::vector<DihedralElement> elements;
  for (std::uint64_t k = 0; k < n; k += step) {
    elements.push_back({0, k, n});
    if (reflections) elements.push_back({1, (k + d) % n, n});
  }
  std::sort(elements.begin(), elements.end());
  return elements;
}

BlockLabel::BlockLabel(std::vector<std::uint64_t> values, std::uint64_t n)
    : values_(std::move(values)), n_(n) {
  if (n_ == 0) throw std::invalid_argument("block label needs N >= 1");
  if (values_.empty()) throw std::invalid_argument("block label needs k >= 1");
  if (values_.size() > static_cast<std::size_t>(kMaxCopies)) {
    throw std::invalid_argument("block label supports at most 64 copies");
  }
  for (auto v : values_) {
    if (v >= n_) throw std::invalid_argument("block label entry outside Z_N");
  }
}

BlockLabel BlockLabel::from_flat(std::uint64_t flat, std::uint64_t n, int k) {
  std::vector<std::uint64_t> values(static_cast<std::size_t>(k));
  for (int j = k - 1; j >= 0; --j) {
    values[static_cast<std::size_t>(j)] = flat % n;
    flat /= n;
  }
  return BlockLabel(std::move(values), n);
}

BlockLabel BlockLabel::uniform(Rng& rng, std::uint64_t n, int k) {
  std::vector<std::uint64_t> values(static_cast<std::size_t>(k));
  for (auto& v : values) v = rng.below(n);
  return BlockLabel(std::move(values), n);
}

std::uint64_t BlockLabel::flat_index() const {
  std::uint64_t flat = 0;
  for (auto v : values_) flat = flat * n_ + v;
  return flat;
}

std::uint64_t BlockLabel::dot(std::uint64_t bits) const {
  // Full accumulation before the final reduction.
  Count sum = 0;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if ((bits >> j) & 1U) sum += values_[j];
  }
  return static_cast<std::uint64_t>(sum % n_);
}

StateVector coset_state_group_basis(std::uint64_t k, std::uint64_t d, std::uint64_t n) {
  if (2 * n > kOracleDim) throw GuardError("oracle scale exceeded");
  StateVector v = StateVector::Zero(static_cast<Eigen::Index>(2 * n));
  const double amp = 1.0 / std::sqrt(2.0);
  v[DihedralElement::make(0, static_cast<std::int64_t>(k), n).index()] = amp;
  v[DihedralElement::make(1, static_cast<std::int64_t>(d) - static_cast<std::int64_t>(k), n)
        .index()] += amp;
  return v;
}

DenseOperator hidden_subgroup_state(const Subgroup& h, std::uint64_t n) {
  if (2 * n > kOracleDim) throw GuardError("oracle scale exceeded");
  const auto members = subgroup_elements(h, n);
  const auto dim = static_cast<Eigen::Index>(2 * n);
  DenseOperator rho = DenseOperator::Zero(dim, dim);
  std::set<std::vector<DihedralElement>> seen;
  for (const auto& g : group_elements(n)) {
    std::vector<DihedralElement> coset;
    for (const auto& m : members) coset.push_back(multiply(g, m));
    std::sort(coset.begin(), coset.end());
    if (!seen.insert(coset).second) continue;
    StateVector v = StateVector::Zero(dim);
    for (const auto& e : coset) v[static_cast<Eigen::Index>(e.index())] = 1.0;
    v /= std::sqrt(static_cast<double>(coset.size()));
    rho += outer(v);
  }
  return rho * (static_cast<double>(members.size()) / static_cast<double>(2 * n));
}

DenseOperator tilde_basis_change(std::uint64_t n) {
  if (2 * n > kOracleDim) throw GuardError("oracle scale exceeded");
  const PhaseTable omega(n);
  const auto sn = static_cast<Eigen::Index>(n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  DenseOperator u = DenseOperator::Zero(2 * sn, 2 * sn);
  for (Eigen::Index y = 0; y < sn; ++y) {
    for (Eigen::Index k = 0; k < sn; ++k) {
      u(y, k) = norm * omega(-y * k);
      u(sn + y, sn + k) = norm * omega(y * k);
    }
  }
  return u;
}

BlockState block_state(const BlockLabel& x, Hidden hidden) {
  if (hidden.is_trivial()) return {x, hidden, StateVector()};
  if (x.k() > 24) throw GuardError("block state needs 2^k <= 2^24");
  const PhaseTable omega(x.n());
  const std::uint64_t dim = std::uint64_t{1} << x.k();
  const double norm = std::pow(2.0, -0.5 * x.k());
  const auto d = static_cast<std::int64_t>(hidden.d() % x.n());
  StateVector amps(static_cast<Eigen::Index>(dim));
  for (std::uint64_t b = 0; b < dim; ++b) {
    amps[static_cast<Eigen::Index>(b)] = norm * omega(d * static_cast<std::int64_t>(x.dot(b)));
  }
  return {x, hidden, std::move(amps)};
}

std::size_t oracle_dimension(std::uint64_t n, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  std::size_t dim = 1;
  for (int j = 0; j < k; ++j) {
    dim *= 2 * n;
    if (dim > kOracleDim) throw GuardError("oracle scale exceeded");
  }
  return dim;
}

DenseOperator dense_state(Hidden hidden, int k, std::uint64_t n) {
  const auto dim = static_cast<Eigen::Index>(oracle_dimension(n, k));
  const double weight = 1.0 / static_cast<double>(dim);
  if (hidden.is_trivial()) return DenseOperator::Identity(dim, dim) * weight;

  const PhaseTable omega(n);
  const auto d = static_cast<std::int64_t>(hidden.d() % n);
  const std::uint64_t blocks = static_cast<std::uint64_t>(dim) >> k;
  const std::uint64_t bits = std::uint64_t{1} << k;
  DenseOperator rho = DenseOperator::Zero(dim, dim);
  for (std::uint64_t flat = 0; flat < blocks; ++flat) {
    const auto x = BlockLabel::from_flat(flat, n, k);
    for (std::uint64_t b = 0; b < bits; ++b) {
      const auto bx = static_cast<std::int64_t>(x.dot(b));
      for (std::uint64_t c = 0; c < bits; ++c) {
        const auto cx = static_cast<std::int64_t>(x.dot(c));
        rho(static_cast<Eigen::Index>(tilde_index(flat, b, k)),
            static_cast<Eigen::Index>(tilde_index(flat, c, k))) = weight * omega(d * (bx - cx));
      }
    }
  }
  return rho;
}

}  // namespace dhsp
