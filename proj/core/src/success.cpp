#include "dhsp/success.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "dhsp/errors.hpp"
#include "dhsp/pgm.hpp"
#include "dhsp/rng.hpp"
#include "dhsp/subset_sum.hpp"
#include "dhsp/summation.hpp"

namespace dhsp {

namespace {

void check_k(int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (k > kMaxCopies) throw std::invalid_argument("k must be <= 64");
}

void check_n(std::uint64_t n) {
  if (n < 2) throw std::invalid_argument("N must be >= 2");
}

double density(std::uint64_t n, int k) { return k / std::log2(static_cast<double>(n)); }

double label_count(std::uint64_t n, int k) { return std::pow(static_cast<double>(n), k); }

/// sum_r sqrt(eta_r eta_{r+N/2}) / 2^k: the LSB excess within block x.
double block_lsb_excess(std::span<const Count> eta, int k) {
  const std::size_t n = eta.size();
  const std::size_t half = n / 2;
  CompensatedSum sum;
  for (std::size_t r = 0; r < n; ++r) {
    sum.add(std::sqrt(to_double(eta[r])) * std::sqrt(to_double(eta[(r + half) % n])));
  }
  return std::ldexp(sum.value(), -k);
}

/// Applies f(eta) to kShards * (samples / kShards) uniformly drawn labels.
template <typename F>
Estimate monte_carlo(std::uint64_t n, int k, std::size_t samples, std::uint64_t seed,
                     const Parallelism& par, F f) {
  if (samples < 2) throw std::invalid_argument("samples must be >= 2");
  const Rng root(seed);
  std::vector<RunningStats> shards(kShards);
  for_each_shard(kShards, par, [&](std::size_t s) {
    Rng rng = root.split(s);
    EtaCounter counter(n);
    std::vector<std::uint64_t> x(static_cast<std::size_t>(k));
    const std::size_t count = shard_size(samples, kShards, s);
    for (std::size_t i = 0; i < count; ++i) {
      for (auto& v : x) v = rng.below(n);
      shards[s].add(f(counter.count(x)));
    }
  });
  RunningStats total;
  for (const auto& s : shards) total.merge(s);
  return {total.mean(), total.stderr_of_mean(), total.count()};
}

}  // namespace

std::string_view method_name(Method method) {
  switch (method) {
    case Method::kExact:
      return "EXACT";
    case Method::kMonteCarlo:
      return "MC";
    case Method::kClosedForm:
      return "CLOSED_FORM";
  }
  return "?";
}

double block_success(std::span<const Count> eta, int k) {
  CompensatedSum roots;
  for (auto c : eta) roots.add(std::sqrt(to_double(c)));
  const double s = roots.value();
  return std::ldexp(s * s, -k) / static_cast<double>(eta.size());
}

ThresholdPoint success_exact(std::uint64_t n, int k) {
  check_n(n);
  check_k(k);
  if (label_count(n, k) > kMaxExactLabels) {
    throw GuardError("exact enumeration needs N^k <= 2^26; use success_mc");
  }
  CompensatedSum sum;
  for_each_profile(n, k, [&](std::span<const std::uint64_t>, std::span<const Count> eta) {
    sum.add(block_success(eta, k));
  });
  return {n, k, density(n, k), sum.value() / label_count(n, k), 0.0, Method::kExact};
}

ThresholdPoint success_over_labels(std::uint64_t n, int k, std::span<const BlockLabel> labels) {
  check_n(n);
  check_k(k);
  if (labels.empty()) throw std::invalid_argument("no labels");
  EtaCounter counter(n);
  CompensatedSum sum;
  for (const auto& x : labels) {
    if (x.n() != n || x.k() != k) throw std::invalid_argument("label does not match (N, k)");
    sum.add(block_success(counter.count(x.values()), k));
  }
  return {n, k, density(n, k), sum.value() / static_cast<double>(labels.size()), 0.0,
          Method::kExact};
}

ThresholdPoint success_mc(std::uint64_t n, int k, std::size_t samples, std::uint64_t seed,
                          const Parallelism& par) {
  check_n(n);
  check_k(k);
  const auto est = monte_carlo(n, k, samples, seed, par,
                               [k](std::span<const Count> eta) { return block_success(eta, k); });
  return {n, k, density(n, k), est.mean, est.stderr_mean, Method::kMonteCarlo};
}

double success_dense_oracle(std::uint64_t n, int k, std::uint64_t d) {
  const auto rho = dense_state(Hidden::shift(d), k, n);
  const auto effects = dihedral_pgm_dense(n, k);
  return (effects[d % n] * rho).trace().real();
}

TrivialSuccess trivial_success(std::uint64_t n, int k) {
  check_n(n);
  check_k(k);
  const Count rank = gram_rank(n, k);
  // rank / (2N)^k = rank / N^k / 2^k
  const double fraction = std::ldexp(to_double(rank) / label_count(n, k), -k);
  return {1.0 - fraction, 0.0, Method::kExact};
}

TrivialSuccess trivial_success_mc(std::uint64_t n, int k, std::size_t samples, std::uint64_t seed,
                                  const Parallelism& par) {
  check_n(n);
  check_k(k);
  const auto est = monte_carlo(n, k, samples, seed, par, [k](std::span<const Count> eta) {
    const auto support = std::count_if(eta.begin(), eta.end(), [](Count c) { return c > 0; });
    return 1.0 - std::ldexp(static_cast<double>(support), -k);
  });
  return {est.mean, est.stderr_mean, Method::kMonteCarlo};
}

std::vector<ThresholdPoint> threshold_sweep(std::uint64_t n, std::span<const int> ks,
                                            std::size_t samples, std::uint64_t seed,
                                            bool force_exact, const Parallelism& par) {
  check_n(n);
  for (int k : ks) check_k(k);
  std::vector<ThresholdPoint> points;
  points.reserve(ks.size());
  for (int k : ks) {
    if (force_exact || label_count(n, k) <= kSweepExactLabels) {
      points.push_back(success_exact(n, k));
    } else {
      points.push_back(success_mc(n, k, samples, splitmix64(seed + static_cast<std::uint64_t>(k)), par));
    }
  }
  return points;
}

double lsb_success_exact(std::uint64_t n, int k) {
  check_n(n);
  check_k(k);
  if (n % 2 != 0) throw std::invalid_argument("N must be even");
  if (label_count(n, k) > kMaxExactLabels) {
    throw GuardError("exact enumeration needs N^k <= 2^26; use lsb_success_mc");
  }
  CompensatedSum sum;
  for_each_profile(n, k, [&](std::span<const std::uint64_t>, std::span<const Count> eta) {
    sum.add(block_lsb_excess(eta, k));
  });
  return 0.5 * (1.0 + sum.value() / label_count(n, k));
}

Estimate lsb_success_mc(std::uint64_t n, int k, std::size_t samples, std::uint64_t seed,
                        const Parallelism& par) {
  check_n(n);
  check_k(k);
  if (n % 2 != 0) throw std::invalid_argument("N must be even");
  auto est = monte_carlo(n, k, samples, seed, par, [k](std::span<const Count> eta) {
    return 0.5 * (1.0 + block_lsb_excess(eta, k));
  });
  return est;
}

double lsb_dense_oracle(std::uint64_t n, int k) {
  if (n % 2 != 0) throw std::invalid_argument("N must be even");
  const auto effects = dihedral_pgm_dense(n, k);
  const auto dim = effects.front().rows();
  DenseOperator e_plus = DenseOperator::Zero(dim, dim);
  DenseOperator rho_plus = DenseOperator::Zero(dim, dim);
  for (std::uint64_t d = 0; d < n; d += 2) {
    e_plus += effects[d];
    rho_plus += dense_state(Hidden::shift(d), k, n);
  }
  rho_plus *= 2.0 / static_cast<double>(n);
  return (e_plus * rho_plus).trace().real();
}

double lsb_upper_bound(std::uint64_t n, int k) {
  const double nd = static_cast<double>(n);
  return 0.5 * (1.0 + std::ldexp(1.0, k) / nd + 6.0 / nd + 3.0 * std::ldexp(1.0, -k));
}

LsbCheck lsb_threshold_check(std::uint64_t n, int k, std::size_t samples, std::uint64_t seed,
                             const Parallelism& par) {
  LsbCheck check;
  check.estimate = lsb_success_mc(n, k, samples, seed, par);
  check.upper_bound = lsb_upper_bound(n, k);
  check.within_bound = check.estimate.mean <= check.upper_bound + 4.0 * check.estimate.stderr_mean;
  return check;
}

bool CountingIdentities::holds() const {
  if (sum_eta_zero != expected_eta_zero || cross_sum != expected_cross) return false;
  for (std::size_t r = 1; r < sum_eta.size(); ++r) {
    if (sum_eta[r] != expected_eta_nonzero) return false;
  }
  return true;
}

CountingIdentities lsb_counting_identities(std::uint64_t n, int k) {
  check_n(n);
  check_k(k);
  if (n % 2 != 0) throw std::invalid_argument("N must be even");
  if (label_count(n, k) > kMaxExactLabels) throw GuardError("identities need N^k <= 2^26");
  const std::uint64_t half = n / 2;
  CountingIdentities ids;
  ids.sum_eta.assign(n, Count{0});
  for_each_profile(n, k, [&](std::span<const std::uint64_t>, std::span<const Count> eta) {
    for (std::uint64_t r = 0; r < n; ++r) {
      ids.sum_eta[r] += eta[r];
      if (r != 0 && r != half) ids.cross_sum += eta[r] * eta[(n - r) % n];
    }
  });
  ids.sum_eta_zero = ids.sum_eta[0];
  const Count subsets = (Count{1} << k) - 1;
  const auto ku = static_cast<unsigned>(k);
  ids.expected_eta_zero = ipow(n, ku - 1) * subsets + ipow(n, ku);
  ids.expected_eta_nonzero = ipow(n, ku - 1) * subsets;
  ids.expected_cross = k >= 2 ? Count{n - 2} * subsets * (subsets - 1) * ipow(n, ku - 2) : Count{0};
  return ids;
}

ChiResult chi_single_copy(std::uint64_t n) {
  check_n(n);
  if (2 * n > 512) throw GuardError("chi needs 2N <= 512");
  const auto dim = static_cast<Eigen::Index>(2 * n);
  DenseOperator mixture = DenseOperator::Zero(dim, dim);
  double average_entropy = 0.0;
  ChiResult result;
  for (std::uint64_t d = 0; d < n; ++d) {
    const DenseOperator rho = hidden_subgroup_state(Subgroup::order2(d), n);
    const Eigen::VectorXd spectrum = hermitian_eigenvalues(rho);
    if (d == 0) result.state_spectrum = spectrum;
    average_entropy += entropy_bits(spectrum) / static_cast<double>(n);
    mixture += rho / static_cast<double>(n);
  }
  result.mixture_spectrum = hermitian_eigenvalues(mixture);
  result.chi = entropy_bits(result.mixture_spectrum) - average_entropy;
  return result;
}

double binary_entropy(double p) {
  double h = 0.0;
  if (p > 0) h -= p * std::log2(p);
  if (p < 1) h -= (1 - p) * std::log2(1 - p);
  return h;
}

InfoBoundResult info_lower_bound(std::uint64_t n, double p) {
  check_n(n);
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("p must be in (0, 1]");
  InfoBoundResult r;
  r.n = n;
  r.p = p;
  const double nd = static_cast<double>(n);
  r.chi_per_copy = 1.0 - 1.0 / nd;
  r.i_p_lower = std::log2(nd) - (1.0 - p) * std::log2(nd - 1.0) - binary_entropy(p);
  r.asymptotic_k = p * std::log2(nd - 1.0) - binary_entropy(p);
  const double ratio = r.i_p_lower / r.chi_per_copy;
  r.k_min = std::max(1, static_cast<int>(std::ceil(ratio - 1e-12)));
  return r;
}

Estimate large_count_fraction(std::uint64_t n, int k, std::uint64_t r, std::size_t samples,
                        std::uint64_t seed, const Parallelism& par) {
  check_n(n);
  check_k(k);
  const Count threshold = (Count{1} << k) - 1;
  return monte_carlo(n, k, samples, seed, par, [&](std::span<const Count> eta) {
    return Count{2 * n} * eta[r % n] >= threshold ? 1.0 : 0.0;
  });
}

void write_sweep_csv(std::ostream& out, std::span<const ThresholdPoint> points) {
  out << "N,k,nu,p,stderr,method\n";
  for (const auto& pt : points) {
    fmt::print(out, "{},{},{:.6f},{:.12g},{:.6g},{}\n", pt.n, pt.k, pt.nu, pt.p, pt.stderr_p,
               method_name(pt.method));
  }
}

void write_infobound_csv(std::ostream& out, std::span<const InfoBoundResult> rows) {
  out << "N,p,k_min\n";
  for (const auto& r : rows) fmt::print(out, "{},{},{}\n", r.n, r.p, r.k_min);
}

}  // namespace dhsp
