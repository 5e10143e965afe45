#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "dhsp/count.hpp"
#include "dhsp/dihedral.hpp"
#include "dhsp/parallel.hpp"

namespace dhsp {

enum class Method { kExact, kMonteCarlo, kClosedForm };

std::string_view method_name(Method method);

/// Success probability at density nu = k / log2 N.
struct ThresholdPoint {
  std::uint64_t n = 0;
  int k = 0;
  double nu = 0.0;
  double p = 0.0;
  double stderr_p = 0.0;  // 0 for exact values
  Method method = Method::kExact;
};

struct Estimate {
  double mean = 0.0;
  double stderr_mean = 0.0;
  std::size_t samples = 0;
};

/// Largest N^k the exact enumerations accept.
inline constexpr double kMaxExactLabels = 0x1.0p26;

/// (sum_r sqrt(eta_r))^2 / (2^k N): the success probability within block x.
double block_success(std::span<const Count> eta, int k);

/// p = (1 / (2^k N^{k+1})) sum_x (sum_r sqrt(eta_r^x))^2 by enumerating Z_N^k.
ThresholdPoint success_exact(std::uint64_t n, int k);

/// Unbiased estimate of p from uniformly drawn x.
ThresholdPoint success_mc(std::uint64_t n, int k, std::size_t samples, std::uint64_t seed,
                          const Parallelism& par = {});

/// The estimator of success_mc applied to an explicit label list, summed in order.
ThresholdPoint success_over_labels(std::uint64_t n, int k, std::span<const BlockLabel> labels);

/// tr E_d rho_d^{(x)k} from dense matrices (oracle scale).
double success_dense_oracle(std::uint64_t n, int k, std::uint64_t d);

/// p_{e} = tr E_{e} rho_{e}^{(x)k} = 1 - rank G / (2N)^k.
struct TrivialSuccess {
  double p = 0.0;
  double stderr_p = 0.0;
  Method method = Method::kExact;
};

TrivialSuccess trivial_success(std::uint64_t n, int k);
TrivialSuccess trivial_success_mc(std::uint64_t n, int k, std::size_t samples, std::uint64_t seed,
                                  const Parallelism& par = {});

/// N^k at or below which threshold_sweep enumerates exactly.
inline constexpr double kSweepExactLabels = 0x1.0p20;

std::vector<ThresholdPoint> threshold_sweep(std::uint64_t n, std::span<const int> ks,
                                            std::size_t samples, std::uint64_t seed,
                                            bool force_exact = false, const Parallelism& par = {});

/// Least-significant-bit success probability of the optimal two-outcome
/// measurement: (1/2)[1 + (2N)^{-k} sum_x sum_r sqrt(eta_r eta_{r+N/2})].
double lsb_success_exact(std::uint64_t n, int k);
Estimate lsb_success_mc(std::uint64_t n, int k, std::size_t samples, std::uint64_t seed,
                        const Parallelism& par = {});

/// tr E_+ rho_+ with rho_+ = (2/N) sum_{d even} rho_d^{(x)k} and E_+ = sum_{d even} E_d.
double lsb_dense_oracle(std::uint64_t n, int k);

/// (1/2)(1 + 2^k/N + 6/N + 3/2^k)
double lsb_upper_bound(std::uint64_t n, int k);

struct LsbCheck {
  Estimate estimate;
  double upper_bound = 0.0;
  bool within_bound = false;  // estimate <= bound + 4 stderr
};

LsbCheck lsb_threshold_check(std::uint64_t n, int k, std::size_t samples, std::uint64_t seed,
                             const Parallelism& par = {});

/// Exact sums over all x used in the LSB analysis, next to their closed forms.
struct CountingIdentities {
  Count sum_eta_zero = 0;            // sum_x eta_0
  Count expected_eta_zero = 0;       // N^{k-1}(2^k - 1) + N^k
  std::vector<Count> sum_eta;        // sum_x eta_r for every r
  Count expected_eta_nonzero = 0;    // N^{k-1}(2^k - 1), any r != 0
  Count cross_sum = 0;               // sum_{r != 0, N/2} sum_x eta_r eta_{-r}
  Count expected_cross = 0;          // (N-2)(2^k-1)(2^k-2) N^{k-2}

  bool holds() const;
};

CountingIdentities lsb_counting_identities(std::uint64_t n, int k);

/// Holevo chi of the single-copy ensemble {(1/N, rho_d)}, from dense spectra.
struct ChiResult {
  double chi = 0.0;
  Eigen::VectorXd mixture_spectrum;  // ascending
  Eigen::VectorXd state_spectrum;    // of rho_0, ascending
};

ChiResult chi_single_copy(std::uint64_t n);

struct InfoBoundResult {
  std::uint64_t n = 0;
  double p = 0.0;
  double chi_per_copy = 0.0;  // 1 - 1/N; chi_upper(k) = k * chi_per_copy
  double i_p_lower = 0.0;     // log N - (1-p) log(N-1) - H(p, 1-p)
  int k_min = 1;
  double asymptotic_k = 0.0;  // p log(N-1) - H(p, 1-p)

  double chi_upper(int k) const { return k * chi_per_copy; }
};

InfoBoundResult info_lower_bound(std::uint64_t n, double p);

/// H(p, 1-p) in bits with 0 log 0 = 0.
double binary_entropy(double p);

/// Fraction of uniformly drawn x with eta_r^x >= (2^k - 1) / (2N).
Estimate large_count_fraction(std::uint64_t n, int k, std::uint64_t r, std::size_t samples,
                        std::uint64_t seed, const Parallelism& par = {});

/// "N,k,nu,p,stderr,method"
void write_sweep_csv(std::ostream& out, std::span<const ThresholdPoint> points);
/// "N,p,k_min"
void write_infobound_csv(std::ostream& out, std::span<const InfoBoundResult> rows);

}  // namespace dhsp
