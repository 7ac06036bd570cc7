#include "addbasis/intset.hpp"

#include <algorithm>
#include <stdexcept>

#include "addbasis/kernels.hpp"

namespace addbasis {

void IntegerSet::add(uint64_t n) {
  if (n >= limit_) throw std::out_of_range("IntegerSet::add beyond limit");
  uint64_t& w = words_[n >> 6];
  const uint64_t bit = 1ull << (n & 63);
  if (!(w & bit)) {
    w |= bit;
    ++card_;
  }
}

void IntegerSet::remove(uint64_t n) {
  if (n >= limit_) return;
  uint64_t& w = words_[n >> 6];
  const uint64_t bit = 1ull << (n & 63);
  if (w & bit) {
    w &= ~bit;
    --card_;
  }
}

void IntegerSet::add_range(uint64_t lo, uint64_t hi_inclusive) {
  if (lo >= limit_) return;
  if (hi_inclusive >= limit_) hi_inclusive = limit_ - 1;
  if (lo > hi_inclusive) return;
  uint64_t wl = lo >> 6, wh = hi_inclusive >> 6;
  const uint64_t ml = ~0ull << (lo & 63);
  const uint64_t mh = (hi_inclusive & 63) == 63
                          ? ~0ull
                          : ((1ull << ((hi_inclusive & 63) + 1)) - 1);
  if (wl == wh) {
    words_[wl] |= ml & mh;
  } else {
    words_[wl] |= ml;
    for (uint64_t w = wl + 1; w < wh; ++w) words_[w] = ~0ull;
    words_[wh] |= mh;
  }
  recount();
}

void IntegerSet::or_with(const IntegerSet& other) {
  const size_t n = std::min(words_.size(), other.words_.size());
  for (size_t i = 0; i < n; ++i) words_[i] |= other.words_[i];
  clear_tail();
  recount();
}

void IntegerSet::and_with(const IntegerSet& other) {
  const size_t n = std::min(words_.size(), other.words_.size());
  for (size_t i = 0; i < n; ++i) words_[i] &= other.words_[i];
  for (size_t i = n; i < words_.size(); ++i) words_[i] = 0;
  recount();
}

void IntegerSet::subtract(const IntegerSet& other) {
  const size_t n = std::min(words_.size(), other.words_.size());
  for (size_t i = 0; i < n; ++i) words_[i] &= ~other.words_[i];
  recount();
}

void IntegerSet::recount() {
  card_ = kern::active().popcount(words_.data(), words_.size());
}

void IntegerSet::clear_tail() {
  const uint64_t used = limit_ & 63;
  if (used) words_.back() &= (1ull << used) - 1;
}

bool IntegerSet::is_subset_of(const IntegerSet& other) const {
  return first_not_in(other) == UINT64_MAX;
}

uint64_t IntegerSet::first_not_in(const IntegerSet& other) const {
  const size_t common = std::min(words_.size(), other.words_.size());
  size_t w = kern::active().andnot_scan(words_.data(), other.words_.data(),
                                        common);
  if (w == SIZE_MAX) {
    for (size_t i = common; i < words_.size(); ++i)
      if (words_[i]) return i * 64 + __builtin_ctzll(words_[i]);
    return UINT64_MAX;
  }
  const uint64_t diff = words_[w] & ~other.words_[w];
  return w * 64 + __builtin_ctzll(diff);
}

uint64_t IntegerSet::first_common(const IntegerSet& other) const {
  const size_t n = std::min(words_.size(), other.words_.size());
  for (size_t i = 0; i < n; ++i) {
    const uint64_t both = words_[i] & other.words_[i];
    if (both) return i * 64 + __builtin_ctzll(both);
  }
  return UINT64_MAX;
}

uint64_t IntegerSet::min_element() const {
  for (size_t i = 0; i < words_.size(); ++i)
    if (words_[i]) return i * 64 + __builtin_ctzll(words_[i]);
  return UINT64_MAX;
}

uint64_t IntegerSet::max_element() const {
  for (size_t i = words_.size(); i-- > 0;)
    if (words_[i]) return i * 64 + 63 - __builtin_clzll(words_[i]);
  return UINT64_MAX;
}

uint64_t IntegerSet::next_member(uint64_t from) const {
  if (from >= limit_) return UINT64_MAX;
  size_t w = from >> 6;
  uint64_t cur = words_[w] & (~0ull << (from & 63));
  while (true) {
    if (cur) return w * 64 + __builtin_ctzll(cur);
    if (++w >= words_.size()) return UINT64_MAX;
    cur = words_[w];
  }
}

uint64_t IntegerSet::count_in_range(uint64_t lo, uint64_t hi_inclusive) const {
  if (lo >= limit_) return 0;
  if (hi_inclusive >= limit_) hi_inclusive = limit_ - 1;
  if (lo > hi_inclusive) return 0;
  const uint64_t wl = lo >> 6, wh = hi_inclusive >> 6;
  const uint64_t ml = ~0ull << (lo & 63);
  const uint64_t mh = (hi_inclusive & 63) == 63
                          ? ~0ull
                          : ((1ull << ((hi_inclusive & 63) + 1)) - 1);
  if (wl == wh) return (uint64_t)__builtin_popcountll(words_[wl] & ml & mh);
  uint64_t c = (uint64_t)__builtin_popcountll(words_[wl] & ml) +
               (uint64_t)__builtin_popcountll(words_[wh] & mh);
  if (wh > wl + 1)
    c += kern::active().popcount(words_.data() + wl + 1, wh - wl - 1);
  return c;
}

std::vector<uint64_t> IntegerSet::elements() const {
  std::vector<uint64_t> out;
  out.reserve(card_);
  for (size_t i = 0; i < words_.size(); ++i) {
    uint64_t w = words_[i];
    while (w) {
      out.push_back(i * 64 + __builtin_ctzll(w));
      w &= w - 1;
    }
  }
  return out;
}

std::vector<uint64_t> IntegerSet::elements_in(uint64_t lo,
                                              uint64_t hi_inclusive) const {
  std::vector<uint64_t> out;
  for (uint64_t x = next_member(lo); x != UINT64_MAX && x <= hi_inclusive;
       x = next_member(x + 1))
    out.push_back(x);
  return out;
}

IntegerSet IntegerSet::prefix(uint64_t new_limit) const {
  IntegerSet out(new_limit);
  const size_t n = std::min(out.words_.size(), words_.size());
  std::copy(words_.begin(), words_.begin() + n, out.words_.begin());
  out.clear_tail();
  out.recount();
  return out;
}

IntegerSet integers_in(const Interval& iv, uint64_t limit) {
  IntegerSet out(limit);
  int64_t first = iv.first_inside();
  int64_t last = iv.last_inside();
  if (first < 0) first = 0;
  if (last < first) return out;
  out.add_range((uint64_t)first, (uint64_t)last);
  return out;
}

IntegerSet reflect(const IntegerSet& s, uint64_t m, uint64_t limit) {
  IntegerSet out(limit);
  for (uint64_t x = s.next_member(0); x != UINT64_MAX && x <= m;
       x = s.next_member(x + 1)) {
    const uint64_t v = m - x;
    if (v < limit) out.add(v);
  }
  return out;
}

IntegerSet sumset(const IntegerSet& a, const IntegerSet& b, uint64_t limit) {
  IntegerSet out(limit);
  const IntegerSet& small = a.cardinality() <= b.cardinality() ? a : b;
  const IntegerSet& big = a.cardinality() <= b.cardinality() ? b : a;
  const auto& k = kern::active();
  for (uint64_t x = small.next_member(0); x != UINT64_MAX;
       x = small.next_member(x + 1)) {
    if (x >= limit) break;
    k.or_shifted(out.mutable_words(), out.nwords(), big.words(), big.nwords(),
                 x);
  }
  out.clear_tail();
  out.recount();
  return out;
}

uint64_t rep_count(const IntegerSet& a, uint64_t n) {
  if (n == 0) return a.contains(0) ? 1 : 0;
  uint64_t c = kern::active().pair_count(a.words(), a.limit(), n, 0,
                                         (n - 1) / 2);
  if ((n & 1) == 0 && a.contains(n / 2)) ++c;
  return c;
}

uint64_t rep_count_windowed(const IntegerSet& a, uint64_t n, uint64_t rho) {
  if (n == 0) return 0;
  const uint64_t x_lo = std::max<uint64_t>(1, (n + rho) / (rho + 1));
  uint64_t c = 0;
  if (n >= 1 && x_lo <= (n - 1) / 2)
    c = kern::active().pair_count(a.words(), a.limit(), n, x_lo, (n - 1) / 2);
  if ((n & 1) == 0 && n / 2 >= 1 && a.contains(n / 2)) ++c;
  return c;
}

std::vector<RepEntry> rep_profile(const IntegerSet& a, uint64_t from,
                                  uint64_t to, uint64_t rho) {
  std::vector<RepEntry> out;
  if (to < from) throw std::invalid_argument("rep_profile: to < from");
  if (to > 2 * a.limit())
    throw std::invalid_argument("rep_profile: range beyond attainable sums");
  out.reserve(to - from);
  for (uint64_t n = from; n < to; ++n)
    out.push_back({n, rep_count(a, n), rep_count_windowed(a, n, rho)});
  return out;
}

}  // namespace addbasis
