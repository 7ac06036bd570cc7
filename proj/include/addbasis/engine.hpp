// Staged randomized construction of two disjoint set sequences on the
// exponential blocks (N_k, N_{k+1}), N_i = 4^(i+1), with per-stage selected
// sets folded in through top-of-block reflections.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "addbasis/cases.hpp"
#include "addbasis/coloring.hpp"
#include "addbasis/intset.hpp"

namespace addbasis {

// N_i = 4^(i+1)
inline uint64_t stage_bound(uint64_t i) {
  if (i + 1 > 31) throw std::overflow_error("stage bound exceeds 64 bits");
  return 1ull << (2 * (i + 1));
}

// floor(n * alpha_num / alpha_den), exact
inline uint64_t rep_floor(uint64_t n, uint64_t alpha_num, uint64_t alpha_den) {
  if (alpha_den == 0) throw std::invalid_argument("alpha_den must be positive");
  return (uint64_t)(((__int128)n * alpha_num) / alpha_den);
}

struct SelectionMeta {
  bool active = false;          // selection mechanism engaged at this stage
  uint64_t eligible_stage = 0;  // smallest i making the chosen set i-eligible
  uint64_t rank = 0;            // candidates enumerated before the choice
  uint64_t eligible_count = 0;  // stage-k eligible-set count (saturated)
  uint64_t fiber_value = 0;     // special mechanism only
};

struct StageRecord {
  uint32_t k = 0;
  uint64_t bound = 0;  // N_k
  IntegerSet block_b, block_c;            // fresh stage parts, limit 4N+1
  std::vector<uint64_t> sel, sel_b, sel_c;  // selected set and its split
  SelectionMeta meta;
};

struct RunConfig {
  CaseSpec spec;
  uint32_t kmax = 10;
  uint64_t seed = 42;
  uint64_t alpha_num = 1, alpha_den = 100000000;
  uint64_t rho = 100;
  uint32_t kmin = 4;
  uint64_t candidate_cap = 1000000;
  uint64_t count_cap = 1000000000000000ull;  // eligible-count saturation
};

struct Construction {
  RunConfig cfg;
  uint64_t universe = 0;  // 4*N_kmax + 1
  Coloring coloring;
  IntegerSet b, c, all;              // cumulative sets after stage kmax
  std::vector<StageRecord> stages;   // stages[i] is stage i+1
  std::vector<uint8_t> birth;        // birth[x] = stage that added x (x <= N_kmax)
  uint32_t activation_stage = 0;     // registry mechanism, 0 = never engaged
  uint32_t special_k0 = 0;           // special mechanism offset, 0 = unset
  std::vector<uint64_t> special_b_seq;

  explicit Construction(const RunConfig& config)
      : cfg(config), coloring(0, 1) {}

  const StageRecord& stage(uint32_t k) const { return stages.at(k - 1); }

  // cumulative sets up to stage k, i.e. members <= N_{k+1}
  IntegerSet b_at(uint32_t k) const { return b.prefix(stage_bound(k + 1) + 1); }
  IntegerSet c_at(uint32_t k) const { return c.prefix(stage_bound(k + 1) + 1); }
  IntegerSet all_at(uint32_t k) const {
    return all.prefix(stage_bound(k + 1) + 1);
  }
  // the case's basis (whole-universe view)
  const IntegerSet& basis() const {
    return cfg.spec.a_choice() == CaseSpec::AChoice::union_bc ? all : b;
  }
};

struct HypothesisViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SelectionExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Executes stages 1..kmax. Throws HypothesisViolation / SelectionExhausted on
// mechanism bugs; those abort the run.
Construction run_construction(const RunConfig& cfg);

}  // namespace addbasis
