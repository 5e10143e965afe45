#include "dhsp/phase.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dhsp {

PhaseTable::PhaseTable(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("phase table needs N >= 1");
  table_.resize(n);
  for (std::uint64_t m = 0; m < n; ++m) {
    // Quarter turns are stored exactly.
    if ((4 * m) % n == 0) {
      static constexpr Complex kQuarter[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      table_[m] = kQuarter[(4 * m) / n];
      continue;
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
    table_[m] = {std::cos(angle), std::sin(angle)};
  }
}

}  // namespace dhsp
