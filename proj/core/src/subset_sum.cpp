#include "dhsp/subset_sum.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "dhsp/errors.hpp"
#include "dhsp/rng.hpp"

namespace dhsp {

namespace {

void check_enumerable(const BlockLabel& x) {
  if (x.k() > kMaxEnumerationBits) throw GuardError("enumeration needs 2^k <= 2^24");
}

}  // namespace

void subset_sum_step(std::span<const Count> prev, std::uint64_t xj, std::span<Count> next) {
  const std::size_t n = prev.size();
  const std::size_t shift = static_cast<std::size_t>(xj % n);
  // r < shift wraps around to r - shift + N.
  for (std::size_t r = 0; r < shift; ++r) next[r] = prev[r] + prev[r + n - shift];
  for (std::size_t r = shift; r < n; ++r) next[r] = prev[r] + prev[r - shift];
}

EtaCounter::EtaCounter(std::uint64_t n) : n_(n), current_(n), scratch_(n) {}

std::span<const Count> EtaCounter::count(std::span<const std::uint64_t> x) {
  std::fill(current_.begin(), current_.end(), Count{0});
  current_[0] = 1;
  for (auto xj : x) {
    subset_sum_step(current_, xj, scratch_);
    current_.swap(scratch_);
  }
  return current_;
}

SubsetProfile count_eta(const BlockLabel& x) {
  EtaCounter counter(x.n());
  const auto eta = counter.count(x.values());
  SubsetProfile profile{x, std::vector<Count>(eta.begin(), eta.end()), 0};
  for (auto c : profile.eta) profile.support_size += c > 0 ? 1 : 0;
  return profile;
}

void for_each_profile(
    std::uint64_t n, int k,
    const std::function<void(std::span<const std::uint64_t>, std::span<const Count>)>& visit) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  const auto levels = static_cast<std::size_t>(k);
  std::vector<Count> tables((levels + 1) * n, Count{0});
  tables[0] = 1;
  std::vector<std::uint64_t> x(levels, 0);
  auto row = [&](std::size_t level) {
    return std::span<Count>(tables.data() + level * n, n);
  };
  std::size_t depth = 0;  // entries x[0..depth) have valid tables
  for (;;) {
    while (depth < levels) {
      subset_sum_step(row(depth), x[depth], row(depth + 1));
      ++depth;
    }
    visit(x, row(levels));
    // Odometer increment from the least significant coordinate.
    std::size_t j = levels;
    while (j > 0 && x[j - 1] + 1 == n) {
      x[j - 1] = 0;
      --j;
    }
    if (j == 0) return;
    ++x[j - 1];
    depth = j - 1;
  }
}

std::vector<std::uint64_t> enumerate_subsets(const BlockLabel& x, std::uint64_t r) {
  check_enumerable(x);
  std::vector<std::uint64_t> members;
  const std::uint64_t total = std::uint64_t{1} << x.k();
  for (std::uint64_t b = 0; b < total; ++b) {
    if (x.dot(b) == r % x.n()) members.push_back(b);
  }
  return members;
}

SubsetSumTable::SubsetSumTable(const BlockLabel& x)
    : x_(x), rows_((static_cast<std::size_t>(x.k()) + 1) * x.n(), Count{0}) {
  const std::size_t n = x_.n();
  rows_[0] = 1;
  for (int j = 1; j <= x_.k(); ++j) {
    const auto prev = std::span<const Count>(rows_.data() + (j - 1) * n, n);
    const auto next = std::span<Count>(rows_.data() + j * n, n);
    subset_sum_step(prev, x_[static_cast<std::size_t>(j - 1)], next);
  }
}

std::uint64_t SubsetSumTable::sample(std::uint64_t target, Rng& rng) const {
  const std::uint64_t n = x_.n();
  std::uint64_t r = target % n;
  if (solutions(r) == 0) throw std::invalid_argument("no solution");
  std::uint64_t bits = 0;
  for (int j = x_.k(); j >= 1; --j) {
    const std::uint64_t xj = x_[static_cast<std::size_t>(j - 1)];
    const std::uint64_t rest = (r + n - xj) % n;
    const Count with = count(j - 1, rest);
    if (rng.below_count(count(j, r)) < with) {
      bits |= std::uint64_t{1} << (j - 1);
      r = rest;
    }
  }
  return bits;
}

std::uint64_t sample_solution(const SubsetSumInstance& instance, Rng& rng) {
  return SubsetSumTable(instance.x).sample(instance.target, rng);
}

StateVector superposition_vector(const BlockLabel& x, std::uint64_t r) {
  check_enumerable(x);
  const auto members = enumerate_subsets(x, r);
  StateVector v = StateVector::Zero(static_cast<Eigen::Index>(std::uint64_t{1} << x.k()));
  if (members.empty()) return v;
  const double amp = 1.0 / std::sqrt(static_cast<double>(members.size()));
  for (auto b : members) v[static_cast<Eigen::Index>(b)] = amp;
  return v;
}

PartialIsometry::PartialIsometry(SubsetProfile profile) : profile_(std::move(profile)) {
  check_enumerable(profile_.x);
  inv_sqrt_eta_.reserve(profile_.eta.size());
  for (auto c : profile_.eta) inv_sqrt_eta_.push_back(c > 0 ? 1.0 / std::sqrt(to_double(c)) : 0.0);
}

double PartialIsometry::entry(std::uint64_t p, std::uint64_t b) const {
  return profile_.x.dot(b) == p ? inv_sqrt_eta_[p] : 0.0;
}

StateVector PartialIsometry::row(std::uint64_t p) const {
  StateVector v = StateVector::Zero(static_cast<Eigen::Index>(cols()));
  for (std::uint64_t b = 0; b < cols(); ++b) v[static_cast<Eigen::Index>(b)] = entry(p, b);
  return v;
}

StateVector PartialIsometry::apply(const StateVector& v) const {
  StateVector out = StateVector::Zero(static_cast<Eigen::Index>(rows()));
  for (std::uint64_t b = 0; b < cols(); ++b) {
    const auto p = profile_.x.dot(b);
    out[static_cast<Eigen::Index>(p)] += inv_sqrt_eta_[p] * v[static_cast<Eigen::Index>(b)];
  }
  return out;
}

StateVector PartialIsometry::apply_adjoint(const StateVector& u) const {
  StateVector out(static_cast<Eigen::Index>(cols()));
  for (std::uint64_t b = 0; b < cols(); ++b) {
    const auto p = profile_.x.dot(b);
    out[static_cast<Eigen::Index>(b)] = inv_sqrt_eta_[p] * u[static_cast<Eigen::Index>(p)];
  }
  return out;
}

DenseOperator PartialIsometry::to_dense() const {
  if (rows() * cols() > kOracleDim * kOracleDim) throw GuardError("oracle scale exceeded");
  DenseOperator m = DenseOperator::Zero(static_cast<Eigen::Index>(rows()),
                                        static_cast<Eigen::Index>(cols()));
  for (std::uint64_t b = 0; b < cols(); ++b) {
    const auto p = profile_.x.dot(b);
    m(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(b)) = inv_sqrt_eta_[p];
  }
  return m;
}

PartialIsometry vtilde(const BlockLabel& x) { return PartialIsometry(count_eta(x)); }

DenseOperator neumark_complete(const BlockLabel& x) {
  if (x.k() > kMaxEnumerationBits || x.n() + (std::uint64_t{1} << x.k()) > kOracleDim) {
    throw GuardError("oracle scale exceeded");
  }
  const PartialIsometry v = vtilde(x);
  const auto n = static_cast<Eigen::Index>(x.n());
  const auto bits = static_cast<Eigen::Index>(v.cols());
  const auto& eta = v.profile().eta;
  std::vector<std::uint64_t> sums(static_cast<std::size_t>(bits));
  for (Eigen::Index b = 0; b < bits; ++b) sums[static_cast<std::size_t>(b)] = x.dot(static_cast<std::uint64_t>(b));

  DenseOperator u = DenseOperator::Zero(n + bits, n + bits);
  for (Eigen::Index b = 0; b < bits; ++b) {
    const auto p = sums[static_cast<std::size_t>(b)];
    const double s = v.entry(p, static_cast<std::uint64_t>(b));
    u(static_cast<Eigen::Index>(p), b) = s;                      // Vtilde
    u(n + b, bits + static_cast<Eigen::Index>(p)) = s;           // Vtilde^dagger
    // I - P: P couples b and b' exactly when they share a sum p.
    const double weight = 1.0 / to_double(eta[p]);
    for (Eigen::Index c = 0; c < bits; ++c) {
      if (sums[static_cast<std::size_t>(c)] == p) u(n + c, b) = (c == b ? 1.0 : 0.0) - weight;
    }
  }
  for (Eigen::Index p = 0; p < n; ++p) {
    if (eta[static_cast<std::size_t>(p)] == 0) u(p, bits + p) = 1.0;  // Pi_0
  }
  return u;
}

StateVector qsample(const BlockLabel& x, std::uint64_t p) {
  const DenseOperator u = neumark_complete(x);
  StateVector basis = StateVector::Zero(u.rows());
  basis[static_cast<Eigen::Index>(p % x.n())] = 1.0;
  return u.adjoint() * basis;
}

SubsetSumInstance parse_instance(std::string_view line) {
  std::istringstream in{std::string(line)};
  long long n = 0;
  long long k = 0;
  long long t = 0;
  if (!(in >> n >> k >> t)) throw std::invalid_argument("expected \"N k t x_1 ... x_k\"");
  if (n < 1) throw std::invalid_argument("N must be >= 1");
  if (k < 1 || k > kMaxCopies) throw std::invalid_argument("k must be in [1, 64]");
  if (t < 0 || t >= n) throw std::invalid_argument("t must be in [0, N)");
  std::vector<std::uint64_t> values;
  long long v = 0;
  while (in >> v) {
    if (v < 0 || v >= n) throw std::invalid_argument("x entries must be in [0, N)");
    values.push_back(static_cast<std::uint64_t>(v));
  }
  if (!in.eof()) throw std::invalid_argument("non-numeric token");
  if (values.size() != static_cast<std::size_t>(k)) {
    throw std::invalid_argument("expected " + std::to_string(k) + " numbers, got " +
                                std::to_string(values.size()));
  }
  return {BlockLabel(std::move(values), static_cast<std::uint64_t>(n)),
          static_cast<std::uint64_t>(t)};
}

std::string format_bits(std::uint64_t bits, int k) {
  std::string out(static_cast<std::size_t>(k), '0');
  for (int j = 0; j < k; ++j) {
    if ((bits >> j) & 1U) out[static_cast<std::size_t>(j)] = '1';
  }
  return out;
}

}  // namespace dhsp
