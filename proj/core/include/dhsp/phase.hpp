#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace dhsp {

using Complex = std::complex<double>;

/// Table of the N distinct powers of omega = exp(2 pi i / N). Equal exponents
/// (mod N) always produce bitwise-identical values.
class PhaseTable {
 public:
  explicit PhaseTable(std::uint64_t n);

  std::uint64_t modulus() const { return table_.size(); }

  Complex operator()(std::int64_t exponent) const {
    const auto n = static_cast<std::int64_t>(table_.size());
    std::int64_t m = exponent % n;
    if (m < 0) m += n;
    return table_[static_cast<std::size_t>(m)];
  }

 private:
  std::vector<Complex> table_;
};

}  // namespace dhsp
