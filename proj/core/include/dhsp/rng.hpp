#pragma once

#include <cstdint>
#include <random>

#include "dhsp/count.hpp"

namespace dhsp {

/// Seedable, splittable generator. The engine is std::mt19937_64 (whose
/// output sequence is fixed by the standard); the distributions below are
/// hand-rolled so that draws are identical across standard libraries.
class Rng {
 public:
  static constexpr std::uint64_t kDefaultSeed = 20050101;

  explicit Rng(std::uint64_t seed = kDefaultSeed);

  /// Independent child stream; depends only on (seed, stream).
  Rng split(std::uint64_t stream) const;

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform on [0, bound); bound > 0.
  std::uint64_t below(std::uint64_t bound);
  Count below_count(Count bound);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace dhsp
