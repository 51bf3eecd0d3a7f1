#pragma once

#include <cstdint>
#include <random>

namespace comsat {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; full-avalanche 64-bit mix.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Counter-style substream derivation: the seed is a pure function of
/// (master, stream, index), so trials can be generated in any order and on
/// any number of workers with identical results.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index = 0) {
  std::uint64_t h = mix64(master);
  h = mix64(h ^ (stream * 0xC2B2AE3D27D4EB4Full));
  h = mix64(h ^ (index * 0x165667B19E3779F9ull));
  return h;
}

inline Rng make_trial_rng(std::uint64_t master, std::uint64_t stream, std::uint64_t index = 0) {
  return Rng(derive_seed(master, stream, index));
}

}  // namespace comsat
