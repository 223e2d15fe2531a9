#pragma once

#include <cmath>
#include <cstdint>
#include <random>

// Deterministic draws on top of std::mt19937_64. The engine itself is
// bit-exact by the standard; std::*_distribution is not, so the transforms
// live here and seeded outputs stay byte-identical across toolchains.
namespace qwmatch::detail {

// splitmix64 finalizer; derives independent stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Uniform in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Strictly positive Exponential(1) draw.
inline double exponential(std::mt19937_64& rng) {
  double u;
  do {
    u = uniform01(rng);
  } while (u == 0.0);
  return -std::log(u);
}

// Uniform integer in [0, bound), bound >= 1. Rejects the short final cycle
// of the modulus instead of folding it in.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t r = rng();
    if (r >= threshold) {
      return r % bound;
    }
  }
}

}  // namespace qwmatch::detail
