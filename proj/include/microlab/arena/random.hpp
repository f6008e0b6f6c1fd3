#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace microlab {

// std::mt19937_64 has a fully specified output sequence; the helpers below avoid the
// implementation-defined standard distributions so traces are identical across toolchains.
using SimulationRng = std::mt19937_64;

/// Uniform integer in [0, n) by rejection sampling. n must be > 0.
inline std::size_t uniform_index(SimulationRng& rng, std::size_t n) {
  const std::uint64_t bound = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return static_cast<std::size_t>(draw % bound);
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(SimulationRng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace microlab
