#pragma once

// SplitMix64.  Fixed algorithm, so seeded verification runs reproduce
// bit-for-bit on every platform.  Independent streams are derived from
// (seed, stream) with mix_seed, which lets samples be partitioned across
// workers without changing the drawn values.

#include <cstdint>

namespace polytc {

struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by rejection from the top 2^64 multiple.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~0ULL - ~0ULL % bound;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }
};

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 g(seed ^ (0xA0761D6478BD642FULL * (stream + 1)));
  return g.next();
}

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

}  // namespace polytc
