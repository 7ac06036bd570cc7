// Seeded i.i.d. uniform three-coloring of [0, limit). The color of n depends
// only on (seed, n): re-instantiating with a larger limit keeps every
// previously assigned color.
#pragma once

#include <cstdint>
#include <stdexcept>

#include "addbasis/intset.hpp"
#include "addbasis/rng.hpp"

namespace addbasis {

class Coloring {
 public:
  Coloring(uint64_t seed, uint64_t limit) : seed_(seed), limit_(limit),
                                            x1_(limit), x2_(limit) {
    const uint64_t key = rng::derive(seed, {rng::kStreamColoring});
    for (uint64_t n = 0; n < limit; ++n) {
      const int c = rng::color3(key, n);
      if (c == 1)
        x1_.add(n);
      else if (c == 2)
        x2_.add(n);
    }
  }

  uint64_t seed() const { return seed_; }
  uint64_t limit() const { return limit_; }

  int color(uint64_t n) const {
    if (n >= limit_) throw std::out_of_range("color beyond limit");
    if (x1_.contains(n)) return 1;
    if (x2_.contains(n)) return 2;
    return 3;
  }

  const IntegerSet& class1() const { return x1_; }
  const IntegerSet& class2() const { return x2_; }

  // members of s with color i
  IntegerSet restrict(int i, const IntegerSet& s) const {
    if (s.limit() > limit_)
      throw std::out_of_range("restrict: set exceeds coloring limit");
    IntegerSet out = s;
    if (i == 1) {
      out.and_with(x1_);
    } else if (i == 2) {
      out.and_with(x2_);
    } else if (i == 3) {
      out.subtract(x1_);
      out.subtract(x2_);
    } else {
      throw std::invalid_argument("color index must be 1, 2 or 3");
    }
    return out;
  }

 private:
  uint64_t seed_;
  uint64_t limit_;
  IntegerSet x1_, x2_;
};

}  // namespace addbasis
