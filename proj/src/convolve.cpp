#include "addbasis/convolve.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <stdexcept>

#include "addbasis/kernels.hpp"

namespace addbasis {

namespace {

// Plans are cached per transform length; data buffers are allocated per call
// (new-array execution keeps the footprint at one live buffer). FFTW_ESTIMATE
// keeps planning deterministic.
struct Plans {
  fftw_plan fwd = nullptr;
  fftw_plan inv = nullptr;

  ~Plans() {
    if (fwd) fftw_destroy_plan(fwd);
    if (inv) fftw_destroy_plan(inv);
  }
};

struct FftwBuffer {
  double* p = nullptr;

  explicit FftwBuffer(uint64_t doubles) {
    p = (double*)fftw_malloc(sizeof(double) * doubles);
    if (!p) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(p); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
};

Plans* plans_for(uint64_t L) {
  static std::map<uint64_t, std::unique_ptr<Plans>> cache;
  auto it = cache.find(L);
  if (it != cache.end()) return it->second.get();
  auto p = std::make_unique<Plans>();
  {
    FftwBuffer scratch(2 * (L / 2 + 1));
    p->fwd = fftw_plan_dft_r2c_1d((int)L, scratch.p,
                                  (fftw_complex*)scratch.p, FFTW_ESTIMATE);
    p->inv = fftw_plan_dft_c2r_1d((int)L, (fftw_complex*)scratch.p,
                                  scratch.p, FFTW_ESTIMATE);
  }
  if (!p->fwd || !p->inv) throw std::runtime_error("fftw planning failed");
  Plans* raw = p.get();
  cache.emplace(L, std::move(p));
  return raw;
}

void run_fwd(Plans* plans, double* buf) {
  fftw_execute_dft_r2c(plans->fwd, buf, (fftw_complex*)buf);
}
void run_inv(Plans* plans, double* buf) {
  fftw_execute_dft_c2r(plans->inv, (fftw_complex*)buf, buf);
}

uint64_t next_pow2(uint64_t v) {
  uint64_t L = 1;
  while (L < v) L <<= 1;
  return L;
}

void fill_bits(double* out, uint64_t out_len, const IntegerSet& s,
               uint64_t from, uint64_t count) {
  std::memset(out, 0, sizeof(double) * out_len);
  const uint64_t hi = from + count;  // exclusive
  for (uint64_t x = s.next_member(from); x != UINT64_MAX && x < hi;
       x = s.next_member(x + 1))
    out[x - from] = 1.0;
}

int64_t round_guarded(double v) {
  const double r = std::nearbyint(v);
  if (std::fabs(v - r) > 0.25)
    throw std::runtime_error("convolution rounding drifted; counts not exact");
  return (int64_t)r;
}

// ordered pair counts of s restricted to sums in [n_lo, n_hi)
std::vector<int64_t> self_convolution(const IntegerSet& s, uint64_t n_lo,
                                      uint64_t n_hi) {
  std::vector<int64_t> out(n_hi - n_lo, 0);
  const uint64_t maxel = s.max_element();
  if (maxel == UINT64_MAX || n_hi == n_lo) return out;
  const uint64_t L = next_pow2(2 * maxel + 1);
  Plans* plans = plans_for(L);
  FftwBuffer buf(2 * (L / 2 + 1));
  fill_bits(buf.p, 2 * (L / 2 + 1), s, 0, maxel + 1);
  run_fwd(plans, buf.p);
  auto* z = (fftw_complex*)buf.p;
  for (uint64_t i = 0; i <= L / 2; ++i) {
    const double re = z[i][0], im = z[i][1];
    z[i][0] = re * re - im * im;
    z[i][1] = 2 * re * im;
  }
  run_inv(plans, buf.p);
  const double scale = 1.0 / (double)L;
  const uint64_t lim = std::min<uint64_t>(n_hi, L);
  for (uint64_t n = n_lo; n < lim; ++n)
    out[n - n_lo] = round_guarded(buf.p[n] * scale);
  return out;
}

}  // namespace

std::vector<int64_t> ordered_counts(const IntegerSet& s, uint64_t up_to) {
  return self_convolution(s, 0, up_to);
}

std::vector<int64_t> ordered_cross_counts(const IntegerSet& a,
                                          const IntegerSet& b,
                                          uint64_t up_to) {
  std::vector<int64_t> out(up_to, 0);
  const uint64_t ma = a.max_element(), mb = b.max_element();
  if (ma == UINT64_MAX || mb == UINT64_MAX) return out;
  const uint64_t L = next_pow2(ma + mb + 1);
  Plans* plans = plans_for(L);
  FftwBuffer buf(2 * (L / 2 + 1));
  std::vector<double> spec_a(2 * (L / 2 + 1));
  fill_bits(buf.p, 2 * (L / 2 + 1), a, 0, ma + 1);
  run_fwd(plans, buf.p);
  std::memcpy(spec_a.data(), buf.p, sizeof(double) * 2 * (L / 2 + 1));
  fill_bits(buf.p, 2 * (L / 2 + 1), b, 0, mb + 1);
  run_fwd(plans, buf.p);
  auto* z = (fftw_complex*)buf.p;
  const auto* za = (const fftw_complex*)spec_a.data();
  for (uint64_t i = 0; i <= L / 2; ++i) {
    const double re = z[i][0] * za[i][0] - z[i][1] * za[i][1];
    const double im = z[i][0] * za[i][1] + z[i][1] * za[i][0];
    z[i][0] = re;
    z[i][1] = im;
  }
  run_inv(plans, buf.p);
  const double scale = 1.0 / (double)L;
  const uint64_t lim = std::min<uint64_t>(up_to, L);
  for (uint64_t n = 0; n < lim; ++n)
    out[n] = round_guarded(buf.p[n] * scale);
  return out;
}

std::vector<int64_t> rep_counts_bulk(const IntegerSet& s, uint64_t n_lo,
                                     uint64_t n_hi) {
  std::vector<int64_t> out = self_convolution(s, n_lo, n_hi);
  for (uint64_t n = n_lo; n < n_hi; ++n) {
    const int64_t diag = (n % 2 == 0 && s.contains(n / 2)) ? 1 : 0;
    out[n - n_lo] = (out[n - n_lo] + diag) / 2;
  }
  return out;
}

std::vector<int64_t> rep_counts_windowed_bulk(const IntegerSet& s,
                                              uint64_t n_lo, uint64_t n_hi,
                                              uint64_t rho) {
  if (n_hi <= n_lo) return {};
  std::vector<int64_t> out = rep_counts_bulk(s, n_lo, n_hi);  // S(n) first

  // subtract wide pairs E(n) = #{x + y = n : (rho+1) x < n}, block by block:
  // a bulk prefix convolution plus a thin per-n boundary strip.
  const uint64_t W = 1u << 18;
  const auto& kops = kern::active();
  for (uint64_t b0 = n_lo; b0 < n_hi; b0 += W) {
    const uint64_t b1 = std::min(n_hi, b0 + W);
    const uint64_t x0 = b0 == 0 ? 0 : (b0 - 1) / (rho + 1);
    // bulk: x in [0, x0], y = n - x in [b0 - x0, b1)
    if (s.count_in_range(0, x0) > 0) {
      const uint64_t ylo = b0 - x0;
      const uint64_t ycount = b1 - ylo;
      const uint64_t L = next_pow2(x0 + 1 + ycount);
      Plans* plans = plans_for(L);
      FftwBuffer buf(2 * (L / 2 + 1));
      std::vector<double> spec_pre(2 * (L / 2 + 1));
      fill_bits(buf.p, 2 * (L / 2 + 1), s, 0, x0 + 1);
      run_fwd(plans, buf.p);
      std::memcpy(spec_pre.data(), buf.p, sizeof(double) * 2 * (L / 2 + 1));
      fill_bits(buf.p, 2 * (L / 2 + 1), s, ylo, ycount);
      run_fwd(plans, buf.p);
      auto* z = (fftw_complex*)buf.p;
      const auto* zp = (const fftw_complex*)spec_pre.data();
      for (uint64_t i = 0; i <= L / 2; ++i) {
        const double re = z[i][0] * zp[i][0] - z[i][1] * zp[i][1];
        const double im = z[i][0] * zp[i][1] + z[i][1] * zp[i][0];
        z[i][0] = re;
        z[i][1] = im;
      }
      run_inv(plans, buf.p);
      const double scale = 1.0 / (double)L;
      for (uint64_t n = b0; n < b1; ++n)
        out[n - n_lo] -= round_guarded(buf.p[n - ylo] * scale);
    }
    // boundary: x in (x0, (n-1)/(rho+1)]
    for (uint64_t n = b0; n < b1; ++n) {
      if (n == 0) continue;
      const uint64_t thr = (n - 1) / (rho + 1);
      if (thr > x0)
        out[n - n_lo] -=
            (int64_t)kops.pair_count(s.words(), s.limit(), n, x0 + 1, thr);
    }
  }
  if (n_lo == 0 && !out.empty()) out[0] = 0;  // no valid ratio at n = 0
  for (int64_t v : out)
    if (v < 0)
      throw std::runtime_error("windowed profile went negative; internal bug");
  return out;
}

}  // namespace addbasis
