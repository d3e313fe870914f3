#pragma once

#include <cstdint>

namespace leograph {

// Stateless counter-based hashing is used for every seeded draw in the
// simulator so that results are reproducible bit-for-bit across platforms
// and thread counts. splitmix64 is the finalizer from Vigna's splitmix
// generator.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) {
  return splitmix64(seed ^ (value + 0x9E3779B97F4A7C15ULL + (seed << 6) + (seed >> 2)));
}

// Uniform double in [0, 1) from the high 53 bits of a hash.
inline double uniform01(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). n must be positive. Uses the 53-bit double
// path; the bias is far below anything observable at simulation scale.
inline std::uint64_t uniform_below(std::uint64_t h, std::uint64_t n) {
  return static_cast<std::uint64_t>(uniform01(h) * static_cast<double>(n));
}

}  // namespace leograph
