#include <doctest.h>

#include <cmath>

#include "addbasis/coloring.hpp"

using namespace addbasis;

TEST_CASE("coloring is deterministic and prefix-stable") {
  Coloring a(42, 5000), b(42, 5000), c(42, 9000);
  for (uint64_t n = 0; n < 5000; ++n) {
    CHECK(a.color(n) == b.color(n));
    CHECK(a.color(n) == c.color(n));  // longer limit never reshuffles
  }
  Coloring d(43, 5000);
  int diff = 0;
  for (uint64_t n = 0; n < 5000; ++n)
    if (a.color(n) != d.color(n)) ++diff;
  CHECK(diff > 2000);  // different seeds give different colorings
}

TEST_CASE("restrictions partition any set") {
  Coloring col(7, 4000);
  IntegerSet s(4000);
  for (uint64_t n = 0; n < 4000; n += 3) s.add(n);
  const IntegerSet r1 = col.restrict(1, s);
  const IntegerSet r2 = col.restrict(2, s);
  const IntegerSet r3 = col.restrict(3, s);
  CHECK(r1.cardinality() + r2.cardinality() + r3.cardinality() ==
        s.cardinality());
  CHECK(r1.first_common(r2) == UINT64_MAX);
  CHECK(r1.first_common(r3) == UINT64_MAX);
  CHECK(r2.first_common(r3) == UINT64_MAX);
  IntegerSet u = r1;
  u.or_with(r2);
  u.or_with(r3);
  CHECK(u == s);
  CHECK(col.restrict(2, IntegerSet(100)).empty());
}

TEST_CASE("full-range restrictions partition the interval") {
  const uint64_t L = 30000;
  Coloring col(11, L);
  IntegerSet full(L);
  full.add_range(0, L - 1);
  uint64_t total = 0;
  for (int i = 1; i <= 3; ++i) total += col.restrict(i, full).cardinality();
  CHECK(total == L);
}

TEST_CASE("empirical color frequencies near one third") {
  const uint64_t L = 3000000;
  for (uint64_t seed : {123ull, 42ull}) {
    Coloring col(seed, L);
    const double f1 = (double)col.class1().cardinality() / L;
    const double f2 = (double)col.class2().cardinality() / L;
    const double f3 = 1.0 - f1 - f2;
    for (double f : {f1, f2, f3}) {
      CHECK(f > 1.0 / 3 - 0.002);
      CHECK(f < 1.0 / 3 + 0.002);
    }
  }
}

TEST_CASE("restrict rejects oversized sets") {
  Coloring col(5, 100);
  IntegerSet big(200);
  CHECK_THROWS_AS(col.restrict(1, big), std::out_of_range);
}
