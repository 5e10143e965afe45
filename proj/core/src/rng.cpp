#include "dhsp/rng.hpp"

namespace dhsp {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

Rng Rng::split(std::uint64_t stream) const {
  return Rng(splitmix64(seed_ ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
}

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t bound) {
  // Rejection on the top multiple of bound keeps the draw exactly uniform.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  std::uint64_t draw = engine_();
  while (draw >= limit) draw = engine_();
  return draw % bound;
}

Count Rng::below_count(Count bound) {
  if (bound <= static_cast<Count>(~std::uint64_t{0})) {
    return below(static_cast<std::uint64_t>(bound));
  }
  const Count all = ~Count{0};
  const Count limit = all - (all % bound);
  for (;;) {
    const Count draw = (static_cast<Count>(engine_()) << 64) | engine_();
    if (draw < limit) return draw % bound;
  }
}

}  // namespace dhsp
