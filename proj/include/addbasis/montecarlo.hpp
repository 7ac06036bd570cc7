// Multi-seed empirical validation of the two coloring lemmas and the
// stage-membership probability profile, with an exact rational recursion as
// the oracle for the latter.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "addbasis/cases.hpp"
#include "addbasis/rational.hpp"

namespace addbasis {

// ---- interval-sum lemma ----------------------------------------------------
// One row per (m, repetition): trials colorings of (0, m+1); a trial fails if
// some element of the core of the doubled interval has fewer than m/2000
// ordered representations over the first color class.
struct SumTrialRow {
  uint64_t m = 0;
  uint32_t rep = 0;
  uint32_t trials = 0;
  uint32_t failures = 0;
  int64_t min_count = 0;   // smallest core count seen across trials
  double mean_min = 0.0;    // per-trial minimum, averaged over the trials
};

std::vector<SumTrialRow> sim_sum(const std::vector<uint64_t>& m_grid,
                                 uint32_t trials, uint32_t reps,
                                 uint64_t seed);

// ---- reflected-intersection lemma -------------------------------------------
struct IntersectionTrialRow {
  uint64_t N = 0;
  std::string interval;
  uint32_t trials = 0;
  uint32_t failures = 0;  // trials with an unrepresented core element
  int64_t min_count = 0;
  double mean_min = 0.0;
};

std::vector<IntersectionTrialRow> sim_intersection(
    const std::vector<uint64_t>& N_grid, uint32_t trials, uint64_t seed);

// ---- membership probability ------------------------------------------------
// Exact probability that n lands in the first cumulative set after stage k of
// the pure construction (selection ignored). Fresh interval points carry 1/3;
// a reflected point 4N - x carries (1/3) * (1 - 2 * P(x)); everything else 0.
Rat membership_probability(uint64_t n, uint32_t k);

// Piecewise-constant decomposition of [1, N_{k+1} - 1] into plateaus.
// cls tags the canonical region classes used by the ordering check:
// 1 = full-level (fresh or gap-base reflection), 2 = fresh-base reflection,
// 3 = reflection of a class-2 base, 4 = reflection of a class-3 base,
// 0 = deeper mixture.
struct Plateau {
  uint64_t lo = 0, hi = 0;  // inclusive integer range
  Rat p;
  uint32_t cls = 0;
};

std::vector<Plateau> membership_plateaus(uint32_t k);

// ---- empirical profile -----------------------------------------------------
struct ProfilePoint {
  uint64_t n = 0;
  uint32_t hits = 0;
  uint32_t seeds_used = 0;
  Rat exact;
  uint32_t cls = 0;
  bool within_3sigma = true;
};

struct ProfileResult {
  std::vector<ProfilePoint> points;
  uint32_t within = 0;          // points inside the 3-sigma band
  bool plateau_ordering_ok = false;
  Rat level_full, level_refl2, level_refl3, level_base;  // relative levels
};

// Runs nseeds constructions of the given case at kmax = k and compares the
// empirical membership frequency against the exact recursion on npoints
// sampled plateau points. Points whose membership a seed's selection touches
// are skipped for that seed.
ProfileResult profile_membership(const CaseSpec& spec, uint32_t k,
                                 uint32_t nseeds, uint32_t npoints,
                                 uint64_t seed);

}  // namespace addbasis
