// Dense sets of naturals over [0, limit) with the sumset / representation
// kernels. Values are plain bit vectors; the cardinality is cached and kept
// exact through every mutation.
#pragma once

#include <cstdint>
#include <vector>

#include "addbasis/rational.hpp"

namespace addbasis {

class IntegerSet {
 public:
  IntegerSet() : limit_(1), words_(1, 0), card_(0) {}
  explicit IntegerSet(uint64_t limit)
      : limit_(limit ? limit : 1), words_((limit_ + 63) / 64, 0), card_(0) {}

  uint64_t limit() const { return limit_; }
  uint64_t cardinality() const { return card_; }
  bool empty() const { return card_ == 0; }
  size_t nwords() const { return words_.size(); }
  const uint64_t* words() const { return words_.data(); }
  uint64_t* mutable_words() { return words_.data(); }

  bool contains(uint64_t n) const {
    if (n >= limit_) return false;
    return (words_[n >> 6] >> (n & 63)) & 1;
  }

  void add(uint64_t n);
  void remove(uint64_t n);
  void add_range(uint64_t lo, uint64_t hi_inclusive);  // clamped to limit
  void or_with(const IntegerSet& other);
  void and_with(const IntegerSet& other);
  void subtract(const IntegerSet& other);
  void recount();
  void clear_tail();  // zero bits at positions >= limit in the last word

  bool is_subset_of(const IntegerSet& other) const;
  // smallest member of (this \ other), or UINT64_MAX when subset
  uint64_t first_not_in(const IntegerSet& other) const;
  uint64_t first_common(const IntegerSet& other) const;  // UINT64_MAX if none

  uint64_t min_element() const;  // UINT64_MAX when empty
  uint64_t max_element() const;  // UINT64_MAX when empty
  uint64_t next_member(uint64_t from) const;  // first member >= from
  uint64_t count_in_range(uint64_t lo, uint64_t hi_inclusive) const;
  std::vector<uint64_t> elements() const;
  std::vector<uint64_t> elements_in(uint64_t lo, uint64_t hi_inclusive) const;

  // restriction to [0, new_limit) as a fresh value
  IntegerSet prefix(uint64_t new_limit) const;

  friend bool operator==(const IntegerSet& a, const IntegerSet& b) {
    return a.limit_ == b.limit_ && a.words_ == b.words_;
  }

 private:
  uint64_t limit_;
  std::vector<uint64_t> words_;
  uint64_t card_;
};

// Integers of [0, limit) strictly inside the open rational interval.
IntegerSet integers_in(const Interval& iv, uint64_t limit);

// {m - x : x in s} clipped to [0, limit)
IntegerSet reflect(const IntegerSet& s, uint64_t m, uint64_t limit);

// {x + y : x in a, y in b, x + y < limit}
IntegerSet sumset(const IntegerSet& a, const IntegerSet& b, uint64_t limit);

// unordered representations x <= y, x + y = n; x == y counted once
uint64_t rep_count(const IntegerSet& a, uint64_t n);

// additionally requires y <= rho * x (so x >= n/(rho+1)); x = 0 never counts
uint64_t rep_count_windowed(const IntegerSet& a, uint64_t n, uint64_t rho);

struct RepEntry {
  uint64_t n;
  uint64_t r;
  uint64_t r_windowed;
};

// pointwise reference profile over n in [from, to)
std::vector<RepEntry> rep_profile(const IntegerSet& a, uint64_t from,
                                  uint64_t to, uint64_t rho);

}  // namespace addbasis
