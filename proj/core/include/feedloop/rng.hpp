#pragma once

#include <cstdint>
#include <random>

namespace feedloop {

using Rng = std::mt19937_64;

// splitmix64 finalizer; used to derive independent substream seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed for the substream identified by (seed, a, b). Distinct tuples give
// statistically independent streams; the mapping is fixed across platforms.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                    std::uint64_t b = 0) noexcept {
  return mix64(mix64(mix64(seed) ^ a) ^ (b * 0xd6e8feb86659fd93ULL));
}

// Stream tags keep substreams for different purposes apart.
enum class Stream : std::uint64_t {
  kNetwork = 1,
  kSampling = 2,
  kRecommend = 3,
  kBehavior = 4,
  kAls = 5,
};

inline Rng make_rng(std::uint64_t seed, Stream s, std::uint64_t a = 0,
                    std::uint64_t b = 0) {
  return Rng(derive_seed(derive_seed(seed, static_cast<std::uint64_t>(s)), a, b));
}

// Uniform integer in [0, n). Rejection sampling on the raw 64-bit output so the
// result does not depend on the standard library's distribution algorithms.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % n);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace feedloop
