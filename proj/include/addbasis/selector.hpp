// Selection mechanisms: rank-minimal unseen eligible sets (registry variants)
// and the fixed fiber-driven singleton sequence for the special case.
#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <vector>

#include "addbasis/cases.hpp"

namespace addbasis {

struct Construction;

// Eligibility rank: (largest element, cardinality, ascending lexicographic).
struct RankKey {
  uint64_t max_elem;
  uint64_t card;
  std::vector<uint64_t> elems;  // ascending

  friend bool operator<(const RankKey& a, const RankKey& b) {
    if (a.max_elem != b.max_elem) return a.max_elem < b.max_elem;
    if (a.card != b.card) return a.card < b.card;
    return a.elems < b.elems;
  }
};

// Triangular fiber enumeration 1; 1,2; 1,2,3; ... Every value recurs in all
// later rows and first occurrences are strictly increasing.
uint64_t fiber_value(uint64_t j);

// C(n, k) saturated at cap.
uint64_t sat_binom(uint64_t n, uint64_t k, uint64_t cap);

class Selector {
 public:
  explicit Selector(const CaseSpec& spec, uint64_t candidate_cap,
                    uint64_t count_cap)
      : spec_(spec), candidate_cap_(candidate_cap), count_cap_(count_cap) {}

  struct Choice {
    std::vector<uint64_t> F, G, H;
    bool active = false;
    uint64_t eligible_stage = 0;
    uint64_t rank = 0;
    uint64_t eligible_count = 0;
    uint64_t fiber = 0;
  };

  // Invoked at stage k before the stage is assembled; st holds stages < k.
  Choice select(Construction& st, uint32_t k);

  bool active() const { return active_; }
  const std::set<std::vector<uint64_t>>& seen() const { return seen_; }

 private:
  CaseSpec spec_;
  uint64_t candidate_cap_;
  uint64_t count_cap_;
  bool active_ = false;
  std::set<std::vector<uint64_t>> seen_;
};

// Number of stage-k eligible sets (not cumulative), saturated at cap.
// Uses the birth array, so it is valid both online and post-run.
uint64_t count_stage_eligible(const Construction& st, uint32_t k,
                              uint64_t cap);

// True when elems is i-eligible for some i <= k; reports the smallest such i.
bool eligible_at(const Construction& st, uint32_t k,
                 const std::vector<uint64_t>& elems, uint64_t* stage_out);

// Enumerates candidate sets in rank order, calling visit(elems) for each
// candidate drawn from the element pool (eligibility not yet validated).
// visit returns false to stop. Returns false if the cap was exhausted.
bool enumerate_rank_order(const Construction& st, uint32_t k, uint64_t cap,
                          const std::function<bool(const std::vector<uint64_t>&)>& visit);

}  // namespace addbasis
