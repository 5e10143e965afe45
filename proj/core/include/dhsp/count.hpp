#pragma once

#include <cstdint>
#include <string>

namespace dhsp {

/// Exact subset counts. 2^k fits for every supported k (k <= 64).
__extension__ typedef unsigned __int128 Count;

inline constexpr int kMaxCopies = 64;

std::string to_string(Count value);

inline double to_double(Count value) {
  if ((value >> 64) == 0) return static_cast<double>(static_cast<std::uint64_t>(value));
  return static_cast<double>(value);
}

/// base^exp, exact; the caller guarantees the result fits.
constexpr Count ipow(Count base, unsigned exp) {
  Count result = 1;
  while (exp-- > 0) result *= base;
  return result;
}

}  // namespace dhsp
