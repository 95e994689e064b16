#pragma once

#include <cstdint>
#include <random>

namespace egp {

// Engine seeded from (seed, stream) so independent call sites stay decorrelated
// while remaining reproducible.
inline std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

// Uniform double in [0, 1) built from 53 raw bits; independent of the standard
// library's distribution implementation, so streams are stable everywhere.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& gen, double lo, double hi) {
  return lo + uniform01(gen) * (hi - lo);
}

// Unbiased integer in [0, n) by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t n) {
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % n;
  std::uint64_t v = gen();
  while (v >= limit) v = gen();
  return v % n;
}

}  // namespace egp
