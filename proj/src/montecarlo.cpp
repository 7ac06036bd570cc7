#include "addbasis/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "addbasis/coloring.hpp"
#include "addbasis/convolve.hpp"
#include "addbasis/engine.hpp"
#include "addbasis/rng.hpp"

namespace addbasis {

std::vector<SumTrialRow> sim_sum(const std::vector<uint64_t>& m_grid,
                                 uint32_t trials, uint32_t reps,
                                 uint64_t seed) {
  if (m_grid.empty()) throw std::invalid_argument("empty m grid");
  std::vector<SumTrialRow> rows;
  for (uint64_t m : m_grid) {
    if (m < 200)
      throw std::invalid_argument("m must be >= 200 for a nonempty core");
    const Interval sum_iv(Rat(0), Rat(2 * (int64_t)m + 2));
    const Interval core_iv = core(sum_iv);
    const int64_t z_lo = core_iv.first_inside();
    const int64_t z_hi = core_iv.last_inside();
    for (uint32_t rep = 0; rep < reps; ++rep) {
      SumTrialRow row;
      row.m = m;
      row.rep = rep;
      row.trials = trials;
      row.min_count = INT64_MAX;
      double min_sum = 0;
      for (uint32_t t = 0; t < trials; ++t) {
        const uint64_t key =
            rng::derive(seed, {rng::kStreamSumTrial, m, rep, t});
        IntegerSet first_class(m + 1);
        for (uint64_t x = 1; x <= m; ++x)
          if (rng::color3(key, x) == 1) first_class.add(x);
        const std::vector<int64_t> c =
            ordered_counts(first_class, (uint64_t)z_hi + 1);
        bool failed = false;
        int64_t trial_min = INT64_MAX;
        for (int64_t z = z_lo; z <= z_hi; ++z) {
          const int64_t cnt = c[z];
          trial_min = std::min(trial_min, cnt);
          if (2000 * cnt < (int64_t)m) failed = true;
        }
        row.min_count = std::min(row.min_count, trial_min);
        min_sum += (double)trial_min;
        if (failed) ++row.failures;
      }
      if (trials) row.mean_min = min_sum / trials;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<IntersectionTrialRow> sim_intersection(
    const std::vector<uint64_t>& N_grid, uint32_t trials, uint64_t seed) {
  if (N_grid.empty()) throw std::invalid_argument("empty N grid");
  std::vector<IntersectionTrialRow> rows;
  for (uint64_t N : N_grid) {
    if (N < 256) throw std::invalid_argument("N too small for the intervals");
    const int64_t sN = (int64_t)N;
    const Interval I_choices[3] = {Interval(Rat(2 * sN, 3), Rat(3 * sN, 4)),
                                   Interval(Rat(4 * sN, 3), Rat(2 * sN)),
                                   Interval(Rat(8 * sN, 3), Rat(3 * sN))};
    const Interval J(Rat(sN, 4), Rat(3 * sN, 4));
    for (int ii = 0; ii < 3; ++ii) {
      const Interval& I = I_choices[ii];
      IntersectionTrialRow row;
      row.N = N;
      row.interval = I.str();
      row.trials = trials;
      row.min_count = INT64_MAX;
      double min_sum = 0;
      // z covers core(I + (4N - J)) minus the reflection anchor 4N
      const Interval sum_iv(I.lo + (Rat(4 * sN) - J.hi),
                            I.hi + (Rat(4 * sN) - J.lo));
      const Interval core_iv = core(sum_iv);
      const int64_t z_lo = core_iv.first_inside();
      const int64_t z_hi = core_iv.last_inside();
      const uint64_t limit = 4 * N + 1;
      for (uint32_t t = 0; t < trials; ++t) {
        const uint64_t key = rng::derive(
            seed, {rng::kStreamIntersectionTrial, N, (uint64_t)ii, t});
        Coloring col(key, limit);
        const IntegerSet left =
            col.restrict(1, integers_in(I, limit));
        const IntegerSet right = col.restrict(
            1, reflect(col.restrict(3, integers_in(J, limit)), 4 * N, limit));
        const std::vector<int64_t> c =
            ordered_cross_counts(left, right, (uint64_t)z_hi + 1);
        bool failed = false;
        int64_t trial_min = INT64_MAX;
        for (int64_t z = z_lo; z <= z_hi; ++z) {
          if (z == 4 * sN) continue;
          const int64_t cnt = c[z];
          trial_min = std::min(trial_min, cnt);
          if ((__int128)cnt * 10000000 <= (__int128)N) failed = true;
        }
        row.min_count = std::min(row.min_count, trial_min);
        min_sum += (double)trial_min;
        if (failed) ++row.failures;
      }
      if (trials) row.mean_min = min_sum / trials;
      rows.push_back(row);
    }
  }
  return rows;
}

Rat membership_probability(uint64_t n, uint32_t k) {
  if (n >= stage_bound(k + 1))
    throw std::out_of_range("point beyond the modeled universe");
  for (uint32_t j = k; j >= 1; --j) {
    const uint64_t N = stage_bound(j);
    if (n <= N) continue;
    if (n >= 4 * N) return Rat(0);  // lattice point or above the last block
    // inside block j
    if ((3 * n > 4 * N && n < 2 * N) || (3 * n > 8 * N && n < 3 * N))
      return Rat(1, 3);
    if (n > 3 * N) {
      const Rat base = membership_probability(4 * N - n, j - 1);
      return Rat(1, 3) * (Rat(1) - Rat(2) * base);
    }
    return Rat(0);  // gaps and the point 3N / 2N boundaries
  }
  return Rat(0);  // n <= N_1
}

namespace {

uint32_t class_of(const Rat& base_p) {
  if (base_p == Rat(0)) return 1;
  if (base_p == Rat(1, 3)) return 2;
  if (base_p == Rat(1, 9)) return 3;
  if (base_p == Rat(7, 27)) return 4;
  return 0;
}

}  // namespace

std::vector<Plateau> membership_plateaus(uint32_t k) {
  // plats covers [1, N_{j+1} - 1] after processing stage j
  std::vector<Plateau> plats{{1, stage_bound(1) - 1, Rat(0), 1}};
  for (uint32_t j = 1; j <= k; ++j) {
    const uint64_t N = stage_bound(j);
    std::vector<Plateau> base = plats;  // decomposition of [1, N-1]
    plats.push_back({N, N, Rat(0), 1});
    const Interval f1(Rat(4 * (int64_t)N, 3), Rat(2 * (int64_t)N));
    const Interval f2(Rat(8 * (int64_t)N, 3), Rat(3 * (int64_t)N));
    const uint64_t f1_lo = (uint64_t)f1.first_inside(),
                   f1_hi = (uint64_t)f1.last_inside();
    const uint64_t f2_lo = (uint64_t)f2.first_inside(),
                   f2_hi = (uint64_t)f2.last_inside();
    plats.push_back({N + 1, f1_lo - 1, Rat(0), 1});
    plats.push_back({f1_lo, f1_hi, Rat(1, 3), 1});
    plats.push_back({f1_hi + 1, f2_lo - 1, Rat(0), 1});
    plats.push_back({f2_lo, f2_hi, Rat(1, 3), 1});
    if (f2_hi + 1 <= 3 * N) plats.push_back({f2_hi + 1, 3 * N, Rat(0), 1});
    // reflected complement: walk the base decomposition backwards
    for (auto it = base.rbegin(); it != base.rend(); ++it) {
      const uint64_t lo = 4 * N - it->hi, hi = 4 * N - it->lo;
      const Rat p = Rat(1, 3) * (Rat(1) - Rat(2) * it->p);
      plats.push_back({lo, hi, p, class_of(it->p)});
    }
  }
  // drop empties (possible when an interval boundary collapses)
  std::vector<Plateau> out;
  for (const Plateau& q : plats)
    if (q.lo <= q.hi) out.push_back(q);
  return out;
}

ProfileResult profile_membership(const CaseSpec& spec, uint32_t k,
                                 uint32_t nseeds, uint32_t npoints,
                                 uint64_t seed) {
  ProfileResult res;
  const std::vector<Plateau> plats = membership_plateaus(k);

  // sample from plateaus with nonzero probability; keep one lattice point as
  // a structural zero-probe
  std::vector<const Plateau*> pool;
  for (const Plateau& q : plats)
    if (!(q.p == Rat(0))) pool.push_back(&q);
  const uint64_t key = rng::derive(seed, {rng::kStreamSamplePoints, k});
  std::set<uint64_t> chosen;
  res.points.reserve(npoints);
  {
    ProfilePoint lattice;
    lattice.n = stage_bound(k);  // never a member
    lattice.exact = Rat(0);
    lattice.cls = 1;
    res.points.push_back(lattice);
  }
  uint64_t tick = 0;
  while (res.points.size() < npoints + 1 && tick < 100000) {
    const Plateau& q = *pool[rng::pick(key, tick, pool.size())];
    const uint64_t n = q.lo + rng::pick(key, tick + 500000, q.hi - q.lo + 1);
    ++tick;
    if (!chosen.insert(n).second) continue;
    ProfilePoint pt;
    pt.n = n;
    pt.exact = q.p;
    pt.cls = q.cls;
    res.points.push_back(pt);
  }

  // empirical pass
  RunConfig cfg;
  cfg.spec = spec;
  cfg.kmax = k;
  for (uint32_t i = 0; i < nseeds; ++i) {
    cfg.seed = rng::derive(seed, {rng::kStreamProfileSeed, i});
    const Construction st = run_construction(cfg);
    // positions whose membership the selection influenced: the reflected
    // images of selected elements, and the reflections of those images
    std::set<uint64_t> touched;
    for (const StageRecord& rec : st.stages) {
      const uint64_t fourN = 4 * rec.bound;
      for (uint64_t e : rec.sel) touched.insert(fourN - e);
    }
    std::set<uint64_t> level2;
    for (const StageRecord& rec : st.stages) {
      const uint64_t fourN = 4 * rec.bound;
      for (uint64_t y : touched)
        if (y < rec.bound) level2.insert(fourN - y);
    }
    touched.insert(level2.begin(), level2.end());
    for (ProfilePoint& pt : res.points) {
      if (touched.count(pt.n)) continue;
      ++pt.seeds_used;
      if (st.b.contains(pt.n)) ++pt.hits;
    }
  }

  for (ProfilePoint& pt : res.points) {
    const double p = (double)pt.exact.num / (double)pt.exact.den;
    const double sigma =
        pt.seeds_used ? std::sqrt(p * (1 - p) / pt.seeds_used) : 0.0;
    const double emp =
        pt.seeds_used ? (double)pt.hits / pt.seeds_used : 0.0;
    pt.within_3sigma = std::abs(emp - p) <= 3 * sigma + 1e-12;
    if (pt.within_3sigma) ++res.within;
  }

  // plateau ordering: the four canonical classes by exact level
  res.level_full = Rat(1);
  res.level_refl2 = Rat(3) * Rat(1, 3) * (Rat(1) - Rat(2) * Rat(1, 9));
  res.level_refl3 = Rat(3) * Rat(1, 3) * (Rat(1) - Rat(2) * Rat(7, 27));
  res.level_base = Rat(3) * Rat(1, 9);
  bool have[5] = {false, false, false, false, false};
  for (const Plateau& q : plats)
    if (q.cls <= 4) have[q.cls] = true;
  const Rat& l1 = res.level_full;
  const Rat& l3 = res.level_refl2;
  const Rat& l4 = res.level_refl3;
  const Rat& l2 = res.level_base;
  res.plateau_ordering_ok = have[1] && have[2] && have[3] && have[4] &&
                            l2 < l4 && l4 < l3 && l3 < l1;
  return res;
}

}  // namespace addbasis
