#include "addbasis/kernels.hpp"

#include <cstring>

namespace addbasis {
namespace kern {

uint64_t extract_word(const uint64_t* bits, uint64_t nbits, int64_t pos) {
  if (pos <= -64 || pos >= (int64_t)nbits) return 0;
  const int64_t nwords = (int64_t)((nbits + 63) / 64);
  int64_t w = pos >> 6;  // floor toward -inf for negatives
  const int o = (int)(pos - (w << 6));
  const uint64_t lo = (w >= 0 && w < nwords) ? bits[w] : 0;
  const uint64_t hi = (w + 1 >= 0 && w + 1 < nwords) ? bits[w + 1] : 0;
  if (o == 0) return lo;
  return (lo >> o) | (hi << (64 - o));
}

namespace {

inline uint64_t range_mask(uint64_t base, uint64_t x_lo, uint64_t x_hi) {
  // mask of bits t in [0,63] with base+t in [x_lo, x_hi]
  uint64_t m = ~0ull;
  if (x_lo > base) {
    const uint64_t off = x_lo - base;
    m = (off >= 64) ? 0 : (m << off);
  }
  if (x_hi < base + 63) {
    const uint64_t off = x_hi - base;  // x_hi >= base checked by caller
    m &= (off >= 63) ? ~0ull : ((1ull << (off + 1)) - 1);
  }
  return m;
}

uint64_t pair_count2_scalar(const uint64_t* a, uint64_t a_bits,
                            const uint64_t* b, uint64_t b_bits, uint64_t n,
                            uint64_t x_lo, uint64_t x_hi) {
  if (a_bits == 0 || b_bits == 0) return 0;
  if (x_hi >= a_bits) x_hi = a_bits - 1;
  if (x_hi > n) x_hi = n;
  // need n - x < b_bits  =>  x > n - b_bits
  if (n >= b_bits && x_lo < n - b_bits + 1) x_lo = n - b_bits + 1;
  if (x_lo > x_hi) return 0;

  uint64_t count = 0;
  uint64_t xb = x_lo & ~63ull;
  for (; xb <= x_hi; xb += 64) {
    uint64_t wx = a[xb >> 6] & range_mask(xb, x_lo, x_hi);
    if (!wx) continue;
    const uint64_t wy =
        extract_word(b, b_bits, (int64_t)n - (int64_t)xb - 63);
    count += (uint64_t)__builtin_popcountll(wx & bitrev64(wy));
  }
  return count;
}

uint64_t pair_count_scalar(const uint64_t* bits, uint64_t nbits, uint64_t n,
                           uint64_t x_lo, uint64_t x_hi) {
  return pair_count2_scalar(bits, nbits, bits, nbits, n, x_lo, x_hi);
}

void or_shifted_scalar(uint64_t* dst, size_t dst_words, const uint64_t* src,
                       size_t src_words, uint64_t shift_bits) {
  const size_t ws = shift_bits >> 6;
  const int o = (int)(shift_bits & 63);
  if (ws >= dst_words) return;
  if (o == 0) {
    const size_t lim = (src_words < dst_words - ws) ? src_words : dst_words - ws;
    for (size_t i = 0; i < lim; ++i) dst[i + ws] |= src[i];
    return;
  }
  uint64_t carry = 0;
  const size_t lim = (src_words < dst_words - ws) ? src_words : dst_words - ws;
  for (size_t i = 0; i < lim; ++i) {
    const uint64_t v = src[i];
    dst[i + ws] |= (v << o) | carry;
    carry = v >> (64 - o);
  }
  if (ws + lim < dst_words) dst[ws + lim] |= carry;
}

uint64_t popcount_scalar(const uint64_t* w, size_t nwords) {
  uint64_t c = 0;
  for (size_t i = 0; i < nwords; ++i) c += (uint64_t)__builtin_popcountll(w[i]);
  return c;
}

uint64_t popcount_and_scalar(const uint64_t* a, const uint64_t* b,
                             size_t nwords) {
  uint64_t c = 0;
  for (size_t i = 0; i < nwords; ++i)
    c += (uint64_t)__builtin_popcountll(a[i] & b[i]);
  return c;
}

size_t andnot_scan_scalar(const uint64_t* a, const uint64_t* b,
                          size_t nwords) {
  for (size_t i = 0; i < nwords; ++i)
    if (a[i] & ~b[i]) return i;
  return SIZE_MAX;
}

}  // namespace

const Kernels& scalar() {
  static const Kernels k = {"scalar",          pair_count_scalar,
                            pair_count2_scalar, or_shifted_scalar,
                            popcount_scalar,    popcount_and_scalar,
                            andnot_scan_scalar};
  return k;
}

}  // namespace kern
}  // namespace addbasis
