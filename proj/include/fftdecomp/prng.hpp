#pragma once

#include <cstdint>

namespace fftdecomp {

/// SplitMix64: the 64-bit generator used for every seeded random choice
/// (inputs, sequence sampling). Pinned so outputs are reproducible across
/// platforms and runs.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, n) by masked rejection; n must be positive.
  std::uint64_t next_below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t mask = ~0ULL >> __builtin_clzll(n - 1);
    for (;;) {
      const std::uint64_t v = next() & mask;
      if (v < n) return v;
    }
  }

  /// Uniform double in [-1, 1).
  double next_signed_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-52 - 1.0;
  }
};

}  // namespace fftdecomp
