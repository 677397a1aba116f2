#pragma once

#include <cstdint>

namespace itp {

// Reproducible random source used by the simulator. The algorithm is pinned
// so the same seed yields the same stream on every platform and in every
// reimplementation: xoshiro256** 1.0, seeded by four successive outputs of
// SplitMix64. Bounded integers use threshold rejection, reals take the top
// 53 bits. See README "Reproducibility" for the exact contract.
class Rng {
public:
  explicit Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& word : state_) word = split_mix64(sm);
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Unbiased integer in [0, bound). bound must be nonzero.
  uint64_t next_below(uint64_t bound) {
    const uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const uint64_t x = next_u64();
      if (x >= threshold) return x % bound;
    }
  }

  // Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Derives an independent substream seed; used for per-run and per-strategy
  // streams so runs can be evaluated in any order.
  static uint64_t derive(uint64_t seed, uint64_t index) {
    uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
    return mix(z);
  }

private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  static uint64_t mix(uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static uint64_t split_mix64(uint64_t& s) {
    s += 0x9E3779B97F4A7C15ULL;
    return mix(s);
  }

  uint64_t state_[4];
};

} // namespace itp
