#pragma once

#include <cstdint>

#include "rctv/normal.hpp"

// Counter-based random numbers: draw i of stream `seed` is a pure function
// of (seed, i), with no sequential state. Simulations can therefore be
// partitioned across threads in any order and still produce bit-identical
// results; reproducibility is part of the output contract, not an accident
// of scheduling.

namespace rctv {

// splitmix64 finalizer over a Weyl sequence on the index.
inline std::uint64_t counter_mix(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Uniform on the open interval (0,1): 53 random bits centred in their cell,
// so 0 and 1 are unreachable and the normal transform below never sees an
// infinite quantile.
inline double counter_uniform(std::uint64_t seed, std::uint64_t index) {
  return static_cast<double>(counter_mix(seed, index) >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

// Standard normal draw by inverse CDF. One uniform per normal keeps the
// index arithmetic trivial (draw i consumes exactly counter i).
inline double counter_normal(std::uint64_t seed, std::uint64_t index) {
  return norm_quantile(counter_uniform(seed, index));
}

}  // namespace rctv
