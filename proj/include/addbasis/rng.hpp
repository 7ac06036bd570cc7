// Counter-based keyed randomness: every random decision is a pure hash of
// (seed, purpose tag, indices), so any part of a run can be reproduced in
// isolation and enlarging a universe never reshuffles earlier draws.
#pragma once

#include <cstdint>
#include <initializer_list>

namespace addbasis {
namespace rng {

constexpr uint64_t kGolden = 0x9E3779B97F4A7C15ull;

inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// purpose tags for derived streams
constexpr uint64_t kStreamColoring = 1;
constexpr uint64_t kStreamSumTrial = 2;
constexpr uint64_t kStreamIntersectionTrial = 3;
constexpr uint64_t kStreamProfileSeed = 4;
constexpr uint64_t kStreamSamplePoints = 5;

inline uint64_t derive(uint64_t seed, std::initializer_list<uint64_t> parts) {
  uint64_t h = mix64(seed + kGolden);
  for (uint64_t p : parts) h = mix64(h ^ (p + kGolden));
  return h;
}

// uniform draw from {1,2,3} keyed by (key, n)
inline int color3(uint64_t key, uint64_t n) {
  return 1 + (int)(mix64(key ^ (n * kGolden + 1)) % 3);
}

// small uniform integer in [0, bound) keyed by (key, i)
inline uint64_t pick(uint64_t key, uint64_t i, uint64_t bound) {
  return mix64(key ^ (i * kGolden + 2)) % bound;
}

}  // namespace rng
}  // namespace addbasis
