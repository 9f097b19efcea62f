#pragma once

#include <cstdint>

namespace boolat {

/// 64-bit finalizer with full avalanche (splitmix64 style).
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

/// Keyed counter hash: one 64-bit word per (seed, a, b, c). Used wherever
/// bits must be reproducible regardless of evaluation order or thread count.
constexpr std::uint64_t counter_word(std::uint64_t seed, std::uint64_t a,
                                     std::uint64_t b, std::uint64_t c) noexcept {
  std::uint64_t h = mix64(seed + kGoldenGamma);
  h = mix64((h ^ a) + kGoldenGamma);
  h = mix64((h ^ b) + kGoldenGamma);
  h = mix64((h ^ c) + kGoldenGamma);
  return h;
}

/// Sequential splitmix64 stream. Deliberately not std::uniform_* based:
/// outputs must be identical across standard library implementations.
class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept { return mix64(state_ += kGoldenGamma); }

  /// Uniform integer in [0, bound), bound >= 1, by masked rejection.
  std::uint64_t below(std::uint64_t bound) noexcept {
    if (bound <= 1) return 0;
    std::uint64_t mask = ~0ULL >> __builtin_clzll((bound - 1) | 1);
    for (;;) {
      std::uint64_t v = next() & mask;
      if (v < bound) return v;
    }
  }

  /// Uniform double in [0, 1).
  double next_double() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace boolat
