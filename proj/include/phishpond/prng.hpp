#pragma once

#include <array>
#include <cstdint>

namespace phishpond {

// SplitMix64 step. Used to expand a 64-bit seed into generator state and to
// derive independent per-stream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

// Derives the seed of sub-stream `stream` from `seed`. Stable across
// platforms; see docs/prng.md.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// xoshiro256** 1.0 (Blackman & Vigna), state filled by four SplitMix64
/// outputs of the seed. All game randomness goes through this generator so
/// seeded runs replay identically everywhere.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed);

  std::uint64_t next();

  // Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  // Uniform double in [0, 1) from the top 53 bits.
  double unit();

 private:
  std::array<std::uint64_t, 4> s_;
};

}  // namespace phishpond
