// Word-level bit kernels behind the set operations. Scalar reference
// implementations plus AVX2 variants selected once at startup; both are
// exported so the test suite can cross-check them on identical inputs.
#pragma once

#include <cstddef>
#include <cstdint>

namespace addbasis {
namespace kern {

// Counts x in [x_lo, x_hi] with bit x and bit (n - x) both set.
// Bits outside [0, nbits) read as zero. Requires x_hi <= n.
using PairCountFn = uint64_t (*)(const uint64_t* bits, uint64_t nbits,
                                 uint64_t n, uint64_t x_lo, uint64_t x_hi);

// Counts x in [x_lo, x_hi] with bit x set in `a` and bit (n - x) set in `b`.
using PairCount2Fn = uint64_t (*)(const uint64_t* a, uint64_t a_bits,
                                  const uint64_t* b, uint64_t b_bits,
                                  uint64_t n, uint64_t x_lo, uint64_t x_hi);

// dst |= src << shift_bits, over whole words; dst has dst_words words.
using OrShiftedFn = void (*)(uint64_t* dst, size_t dst_words,
                             const uint64_t* src, size_t src_words,
                             uint64_t shift_bits);

using PopcountFn = uint64_t (*)(const uint64_t* w, size_t nwords);
using PopcountAndFn = uint64_t (*)(const uint64_t* a, const uint64_t* b,
                                   size_t nwords);
// First word index where a & ~b != 0, or SIZE_MAX if a is a subset of b.
using AndnotScanFn = size_t (*)(const uint64_t* a, const uint64_t* b,
                                size_t nwords);

struct Kernels {
  const char* name;
  PairCountFn pair_count;
  PairCount2Fn pair_count2;
  OrShiftedFn or_shifted;
  PopcountFn popcount;
  PopcountAndFn popcount_and;
  AndnotScanFn andnot_scan;
};

const Kernels& scalar();
const Kernels* avx2();     // nullptr when unsupported by CPU or build
const Kernels& active();   // avx2 when available unless ADDBASIS_FORCE_SCALAR=1

// 64 bits starting at signed position `pos`; out-of-range bits are zero.
uint64_t extract_word(const uint64_t* bits, uint64_t nbits, int64_t pos);

inline uint64_t bitrev64(uint64_t x) {
  x = ((x & 0x5555555555555555ull) << 1) | ((x >> 1) & 0x5555555555555555ull);
  x = ((x & 0x3333333333333333ull) << 2) | ((x >> 2) & 0x3333333333333333ull);
  x = ((x & 0x0f0f0f0f0f0f0f0full) << 4) | ((x >> 4) & 0x0f0f0f0f0f0f0f0full);
  return __builtin_bswap64(x);
}

}  // namespace kern
}  // namespace addbasis
