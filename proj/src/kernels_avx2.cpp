// AVX2 variants of the bit kernels. Compiled with -mavx2 in its own TU;
// only reached through the dispatch table after a cpuid check.
#include "addbasis/kernels.hpp"

#ifdef ADDBASIS_HAVE_AVX2

#include <immintrin.h>

namespace addbasis {
namespace kern {
namespace {

inline __m256i bitrev64_vec(__m256i v) {
  const __m256i lut_lo = _mm256_setr_epi8(
      0x0, 0x8, 0x4, 0xc, 0x2, 0xa, 0x6, 0xe, 0x1, 0x9, 0x5, 0xd, 0x3, 0xb,
      0x7, 0xf, 0x0, 0x8, 0x4, 0xc, 0x2, 0xa, 0x6, 0xe, 0x1, 0x9, 0x5, 0xd,
      0x3, 0xb, 0x7, 0xf);
  const __m256i mask4 = _mm256_set1_epi8(0x0f);
  // reverse bits within each byte
  __m256i lo = _mm256_and_si256(v, mask4);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi64(v, 4), mask4);
  __m256i rev = _mm256_or_si256(
      _mm256_slli_epi64(_mm256_and_si256(_mm256_shuffle_epi8(lut_lo, lo),
                                         _mm256_set1_epi8(0x0f)), 4),
      _mm256_shuffle_epi8(lut_lo, hi));
  // reverse byte order within each 64-bit element
  const __m256i bswap = _mm256_setr_epi8(7, 6, 5, 4, 3, 2, 1, 0, 15, 14, 13,
                                         12, 11, 10, 9, 8, 7, 6, 5, 4, 3, 2,
                                         1, 0, 15, 14, 13, 12, 11, 10, 9, 8);
  return _mm256_shuffle_epi8(rev, bswap);
}

inline __m256i popcount8_vec(__m256i v) {
  const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2,
                                       3, 3, 4, 0, 1, 1, 2, 1, 2, 2, 3, 1, 2,
                                       2, 3, 2, 3, 3, 4);
  const __m256i mask4 = _mm256_set1_epi8(0x0f);
  __m256i lo = _mm256_and_si256(v, mask4);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi64(v, 4), mask4);
  return _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo),
                         _mm256_shuffle_epi8(lut, hi));
}

uint64_t pair_count2_avx2(const uint64_t* a, uint64_t a_bits,
                          const uint64_t* b, uint64_t b_bits, uint64_t n,
                          uint64_t x_lo, uint64_t x_hi) {
  if (a_bits == 0 || b_bits == 0) return 0;
  if (x_hi >= a_bits) x_hi = a_bits - 1;
  if (x_hi > n) x_hi = n;
  if (n >= b_bits && x_lo < n - b_bits + 1) x_lo = n - b_bits + 1;
  if (x_lo > x_hi) return 0;

  uint64_t count = 0;
  uint64_t xb = x_lo & ~63ull;

  // head: scalar words until 4-word aligned and interior loads are safe
  auto scalar_word = [&](uint64_t base) {
    uint64_t m = ~0ull;
    if (x_lo > base) m <<= (x_lo - base);
    if (x_hi < base + 63) m &= (1ull << (x_hi - base + 1)) - 1;
    const uint64_t wx = a[base >> 6] & m;
    if (!wx) return;
    const uint64_t wy = extract_word(b, b_bits, (int64_t)n - (int64_t)base - 63);
    count += (uint64_t)__builtin_popcountll(wx & bitrev64(wy));
  };

  // interior y-window loads need positions [n-xb-255-63, n-xb] fully inside
  // [0, b_bits); peel the rest off to the scalar path.
  const uint64_t b_words = (b_bits + 63) / 64;
  __m256i acc = _mm256_setzero_si256();
  while (xb <= x_hi) {
    const bool tail_words = (xb & 255) != 0 || xb + 255 > x_hi ||
                            x_lo > xb;  // partial masks handled scalar
    const int64_t y_lo = (int64_t)n - (int64_t)xb - 255;
    const int64_t y_hi_word = ((int64_t)n - (int64_t)xb) >> 6;
    const bool y_safe = y_lo >= 0 && ((y_lo >> 6) >= 0) &&
                        (uint64_t)y_hi_word + 1 < b_words;
    if (tail_words || !y_safe) {
      scalar_word(xb);
      xb += 64;
      continue;
    }
    // 4 x-words; matching y-bits for lane j cover positions
    // [n-xb-64j-63, n-xb-64j]; lane order must be reversed.
    const __m256i wx = _mm256_loadu_si256((const __m256i*)(a + (xb >> 6)));
    const int shift = (int)(((uint64_t)y_lo) & 63);
    const uint64_t* py = b + (((uint64_t)y_lo) >> 6);
    __m256i v0 = _mm256_loadu_si256((const __m256i*)py);
    __m256i v1 = _mm256_loadu_si256((const __m256i*)(py + 1));
    __m256i wy;
    if (shift == 0) {
      wy = v0;
    } else {
      wy = _mm256_or_si256(_mm256_srl_epi64(v0, _mm_cvtsi32_si128(shift)),
                           _mm256_sll_epi64(v1, _mm_cvtsi32_si128(64 - shift)));
    }
    // wy lane j holds positions [y_lo+64j, y_lo+64j+63]; x-word lane j wants
    // the window ending at n-xb-64j, i.e. lane (3-j) of wy, reversed.
    wy = _mm256_permute4x64_epi64(wy, _MM_SHUFFLE(0, 1, 2, 3));
    wy = bitrev64_vec(wy);
    const __m256i hit = _mm256_and_si256(wx, wy);
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount8_vec(hit),
                                                _mm256_setzero_si256()));
    xb += 256;
  }
  alignas(32) uint64_t lanes[4];
  _mm256_store_si256((__m256i*)lanes, acc);
  return count + lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

uint64_t pair_count_avx2(const uint64_t* bits, uint64_t nbits, uint64_t n,
                         uint64_t x_lo, uint64_t x_hi) {
  return pair_count2_avx2(bits, nbits, bits, nbits, n, x_lo, x_hi);
}

void or_shifted_avx2(uint64_t* dst, size_t dst_words, const uint64_t* src,
                     size_t src_words, uint64_t shift_bits) {
  const size_t ws = shift_bits >> 6;
  const int o = (int)(shift_bits & 63);
  if (ws >= dst_words) return;
  const size_t lim = (src_words < dst_words - ws) ? src_words : dst_words - ws;
  size_t i = 0;
  if (o == 0) {
    for (; i + 4 <= lim; i += 4) {
      __m256i d = _mm256_loadu_si256((const __m256i*)(dst + i + ws));
      __m256i s = _mm256_loadu_si256((const __m256i*)(src + i));
      _mm256_storeu_si256((__m256i*)(dst + i + ws), _mm256_or_si256(d, s));
    }
    for (; i < lim; ++i) dst[i + ws] |= src[i];
    return;
  }
  const __m128i cl = _mm_cvtsi32_si128(o);
  const __m128i cr = _mm_cvtsi32_si128(64 - o);
  // dst[i+ws] |= (src[i] << o) | (src[i-1] >> (64-o))
  for (; i + 4 <= lim; i += 4) {
    __m256i cur = _mm256_loadu_si256((const __m256i*)(src + i));
    __m256i prev;
    if (i == 0) {
      alignas(32) uint64_t tmp[4] = {0, src[0], src[1], src[2]};
      prev = _mm256_load_si256((const __m256i*)tmp);
    } else {
      prev = _mm256_loadu_si256((const __m256i*)(src + i - 1));
    }
    __m256i v = _mm256_or_si256(_mm256_sll_epi64(cur, cl),
                                _mm256_srl_epi64(prev, cr));
    __m256i d = _mm256_loadu_si256((const __m256i*)(dst + i + ws));
    _mm256_storeu_si256((__m256i*)(dst + i + ws), _mm256_or_si256(d, v));
  }
  uint64_t carry = (i == 0) ? 0 : (src[i - 1] >> (64 - o));
  for (; i < lim; ++i) {
    const uint64_t v = src[i];
    dst[i + ws] |= (v << o) | carry;
    carry = v >> (64 - o);
  }
  if (ws + lim < dst_words) dst[ws + lim] |= carry;
}

uint64_t popcount_avx2(const uint64_t* w, size_t nwords) {
  __m256i acc = _mm256_setzero_si256();
  size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    __m256i v = _mm256_loadu_si256((const __m256i*)(w + i));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount8_vec(v),
                                                _mm256_setzero_si256()));
  }
  alignas(32) uint64_t lanes[4];
  _mm256_store_si256((__m256i*)lanes, acc);
  uint64_t c = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < nwords; ++i) c += (uint64_t)__builtin_popcountll(w[i]);
  return c;
}

uint64_t popcount_and_avx2(const uint64_t* a, const uint64_t* b,
                           size_t nwords) {
  __m256i acc = _mm256_setzero_si256();
  size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    __m256i v = _mm256_and_si256(_mm256_loadu_si256((const __m256i*)(a + i)),
                                 _mm256_loadu_si256((const __m256i*)(b + i)));
    acc = _mm256_add_epi64(acc, _mm256_sad_epu8(popcount8_vec(v),
                                                _mm256_setzero_si256()));
  }
  alignas(32) uint64_t lanes[4];
  _mm256_store_si256((__m256i*)lanes, acc);
  uint64_t c = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < nwords; ++i) c += (uint64_t)__builtin_popcountll(a[i] & b[i]);
  return c;
}

size_t andnot_scan_avx2(const uint64_t* a, const uint64_t* b, size_t nwords) {
  size_t i = 0;
  for (; i + 4 <= nwords; i += 4) {
    __m256i v = _mm256_andnot_si256(_mm256_loadu_si256((const __m256i*)(b + i)),
                                    _mm256_loadu_si256((const __m256i*)(a + i)));
    if (!_mm256_testz_si256(v, v)) {
      for (size_t j = i; j < i + 4; ++j)
        if (a[j] & ~b[j]) return j;
    }
  }
  for (; i < nwords; ++i)
    if (a[i] & ~b[i]) return i;
  return SIZE_MAX;
}

}  // namespace

const Kernels* avx2_impl() {
  static const Kernels k = {"avx2",           pair_count_avx2,
                            pair_count2_avx2, or_shifted_avx2,
                            popcount_avx2,    popcount_and_avx2,
                            andnot_scan_avx2};
  return &k;
}

}  // namespace kern
}  // namespace addbasis

#else

namespace addbasis {
namespace kern {
const Kernels* avx2_impl() { return nullptr; }
}  // namespace kern
}  // namespace addbasis

#endif
