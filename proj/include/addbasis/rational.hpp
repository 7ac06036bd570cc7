// Exact rational endpoints for open intervals. All integer membership is
// decided by cross-multiplication; no floating point.
#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace addbasis {

struct Rat {
  int64_t num = 0;
  int64_t den = 1;

  Rat() = default;
  Rat(int64_t n) : num(n), den(1) {}
  Rat(int64_t n, int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) { num = -num; den = -den; }
    const int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  friend Rat operator+(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    return Rat(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return Rat(a.num * b.num, a.den * b.den);
  }
  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator<(const Rat& a, const Rat& b) {
    return (__int128)a.num * b.den < (__int128)b.num * a.den;
  }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }

  std::string str() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }
};

// Open interval (lo, hi) with exact rational endpoints.
struct Interval {
  Rat lo, hi;

  Interval(Rat l, Rat h) : lo(l), hi(h) {
    if (!(lo < hi)) throw std::invalid_argument("empty interval: lo >= hi");
  }

  // strict membership, exact integer arithmetic
  bool contains(uint64_t n) const {
    return (__int128)lo.num < (__int128)n * lo.den &&
           (__int128)n * hi.den < (__int128)hi.num;
  }

  // first integer strictly above lo
  int64_t first_inside() const {
    // floor(lo) + 1; exact for negative lo as well
    int64_t q = lo.num / lo.den;
    int64_t r = lo.num % lo.den;
    if (r < 0) --q;
    return q + 1;
  }
  // last integer strictly below hi
  int64_t last_inside() const {
    int64_t v = hi.num - 1;
    int64_t q = v / hi.den;
    int64_t r = v % hi.den;
    if (r < 0) --q;
    return q;
  }

  std::string str() const { return "(" + lo.str() + "," + hi.str() + ")"; }
};

// Trims one percent of the length from each end. Throws when the trimmed
// interval contains no integer.
inline Interval core(const Interval& iv) {
  const Rat len = iv.hi - iv.lo;
  const Rat margin = len * Rat(1, 100);
  Interval out(iv.lo + margin, iv.hi - margin);
  if (out.first_inside() > out.last_inside())
    throw std::invalid_argument("core is empty");
  return out;
}

}  // namespace addbasis
