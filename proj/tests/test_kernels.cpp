#include <doctest.h>

#include <random>
#include <vector>

#include "addbasis/kernels.hpp"

using namespace addbasis;

namespace {

std::vector<uint64_t> random_words(std::mt19937_64& g, size_t n,
                                   double density) {
  std::vector<uint64_t> w(n, 0);
  std::bernoulli_distribution bit(density);
  for (size_t i = 0; i < n; ++i)
    for (int b = 0; b < 64; ++b)
      if (bit(g)) w[i] |= 1ull << b;
  return w;
}

uint64_t pair_count_naive(const std::vector<uint64_t>& bits, uint64_t nbits,
                          uint64_t n, uint64_t x_lo, uint64_t x_hi) {
  auto test = [&](uint64_t p) {
    return p < nbits && ((bits[p >> 6] >> (p & 63)) & 1);
  };
  uint64_t c = 0;
  for (uint64_t x = x_lo; x <= x_hi && x <= n; ++x)
    if (test(x) && test(n - x)) ++c;
  return c;
}

}  // namespace

TEST_CASE("bitrev64 is an involution and maps single bits") {
  CHECK(kern::bitrev64(1ull) == (1ull << 63));
  CHECK(kern::bitrev64(1ull << 63) == 1ull);
  std::mt19937_64 g(99);
  for (int t = 0; t < 200; ++t) {
    const uint64_t v = g();
    CHECK(kern::bitrev64(kern::bitrev64(v)) == v);
  }
}

TEST_CASE("extract_word windows with zero padding") {
  std::vector<uint64_t> w = {0xfedcba9876543210ull, 0x0123456789abcdefull};
  CHECK(kern::extract_word(w.data(), 128, 0) == w[0]);
  CHECK(kern::extract_word(w.data(), 128, 64) == w[1]);
  CHECK(kern::extract_word(w.data(), 128, 4) ==
        ((w[0] >> 4) | (w[1] << 60)));
  CHECK(kern::extract_word(w.data(), 128, -4) == (w[0] << 4));
  CHECK(kern::extract_word(w.data(), 128, -64) == 0);
  CHECK(kern::extract_word(w.data(), 128, 128) == 0);
  // bits beyond nbits masked by construction: last word has tail zeroed
  std::vector<uint64_t> t = {0xff};
  CHECK(kern::extract_word(t.data(), 8, 4) == 0xf);
}

TEST_CASE("pair_count matches the naive loop (scalar and active)") {
  std::mt19937_64 g(1234);
  for (int t = 0; t < 120; ++t) {
    const size_t words = 1 + (size_t)(g() % 40);
    const uint64_t nbits = words * 64 - (g() % 60);
    auto bits = random_words(g, words, 0.2);
    // zero the tail consistent with nbits
    if (nbits % 64) bits.back() &= (1ull << (nbits % 64)) - 1;
    const uint64_t n = g() % (2 * nbits);
    const uint64_t x_hi0 = std::min<uint64_t>(n, nbits - 1);
    const uint64_t x_lo = g() % (x_hi0 + 1);
    const uint64_t x_hi = x_lo + g() % (x_hi0 - x_lo + 1);
    const uint64_t expect = pair_count_naive(bits, nbits, n, x_lo, x_hi);
    CHECK(kern::scalar().pair_count(bits.data(), nbits, n, x_lo, x_hi) ==
          expect);
    CHECK(kern::active().pair_count(bits.data(), nbits, n, x_lo, x_hi) ==
          expect);
    if (const kern::Kernels* v = kern::avx2())
      CHECK(v->pair_count(bits.data(), nbits, n, x_lo, x_hi) == expect);
  }
}

TEST_CASE("scalar and avx2 agree on all kernels") {
  const kern::Kernels* v = kern::avx2();
  if (!v) {
    MESSAGE("avx2 unavailable; dispatch equivalence skipped");
    return;
  }
  std::mt19937_64 g(777);
  for (int t = 0; t < 80; ++t) {
    const size_t words = 1 + (size_t)(g() % 70);
    auto a = random_words(g, words, 0.4);
    auto b = random_words(g, words, 0.4);
    CHECK(v->popcount(a.data(), words) ==
          kern::scalar().popcount(a.data(), words));
    CHECK(v->popcount_and(a.data(), b.data(), words) ==
          kern::scalar().popcount_and(a.data(), b.data(), words));
    CHECK(v->andnot_scan(a.data(), b.data(), words) ==
          kern::scalar().andnot_scan(a.data(), b.data(), words));

    const uint64_t nbits = words * 64;
    const uint64_t n = g() % (2 * nbits);
    CHECK(v->pair_count2(a.data(), nbits, b.data(), nbits, n, 0, nbits - 1) ==
          kern::scalar().pair_count2(a.data(), nbits, b.data(), nbits, n, 0,
                                     nbits - 1));

    std::vector<uint64_t> d1(words + 8, 0), d2(words + 8, 0);
    const uint64_t shift = g() % (64 * 4);
    v->or_shifted(d1.data(), d1.size(), a.data(), words, shift);
    kern::scalar().or_shifted(d2.data(), d2.size(), a.data(), words, shift);
    CHECK(d1 == d2);
  }
}

TEST_CASE("or_shifted equals elementwise shift") {
  std::mt19937_64 g(5);
  for (int t = 0; t < 60; ++t) {
    const size_t words = 1 + (size_t)(g() % 8);
    auto src = random_words(g, words, 0.3);
    const uint64_t shift = g() % (words * 64 + 70);
    std::vector<uint64_t> dst(words + 3, 0);
    kern::scalar().or_shifted(dst.data(), dst.size(), src.data(), words,
                              shift);
    for (uint64_t p = 0; p < words * 64; ++p) {
      const bool in = (src[p >> 6] >> (p & 63)) & 1;
      const uint64_t q = p + shift;
      if (q < dst.size() * 64) {
        const bool out = (dst[q >> 6] >> (q & 63)) & 1;
        CHECK(out == in);
      }
    }
  }
}
