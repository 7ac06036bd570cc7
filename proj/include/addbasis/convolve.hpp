// Batch representation profiles via FFT convolution. Results are exact
// integers: magnitudes stay far below the 2^53 double mantissa and every
// rounding is guarded. The pointwise kernels in intset.hpp stay the
// independent reference; tests require bit-exact agreement.
#pragma once

#include <cstdint>
#include <vector>

#include "addbasis/intset.hpp"

namespace addbasis {

// ordered pair-sum counts c(n) = #{(x,y) : x,y in s, x+y = n} for n < up_to
std::vector<int64_t> ordered_counts(const IntegerSet& s, uint64_t up_to);

// ordered cross counts c(n) = #{(x,y) : x in a, y in b, x+y = n}
std::vector<int64_t> ordered_cross_counts(const IntegerSet& a,
                                          const IntegerSet& b,
                                          uint64_t up_to);

// unordered representation counts r(n) for n in [n_lo, n_hi)
std::vector<int64_t> rep_counts_bulk(const IntegerSet& s, uint64_t n_lo,
                                     uint64_t n_hi);

// windowed counts r~(n) (pairs x <= y <= rho*x) for n in [n_lo, n_hi)
std::vector<int64_t> rep_counts_windowed_bulk(const IntegerSet& s,
                                              uint64_t n_lo, uint64_t n_hi,
                                              uint64_t rho);

}  // namespace addbasis
