// Exhaustive finite-window verification of the construction's claimed
// properties, plus the post-run selection audits and fault-injection hooks
// used to prove each check can actually fail.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "addbasis/engine.hpp"

namespace addbasis {

struct CheckResult {
  std::string name;
  std::string window;
  bool pass = true;
  bool inconclusive = false;
  std::vector<std::string> witnesses;  // counterexamples / confirming cases
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();

  void fail(const std::string& w) {
    pass = false;
    if (witnesses.size() < 32) witnesses.push_back(w);
  }
  void note(const std::string& w) {
    if (witnesses.size() < 32) witnesses.push_back(w);
  }
  nlohmann::ordered_json to_json() const;
};

// Core structure: per-stage block ranges, disjointness of the two
// cumulative sets, selection hypothesis, exact reconstruction from records.
CheckResult check_structure(const Construction& st);

// Windowed coverage r~ >= max(1, floor(alpha*n)) on [3N_k/2, 6N_k) \ {4N_k}
// for k in [k_lo, k_hi], for both cumulative sets; minima must be
// non-decreasing in k. Profiles are cross-checked pointwise on samples.
CheckResult check_coverage(const Construction& st, uint32_t k_lo,
                            uint32_t k_hi);

// Every representation of N_{k+1} over the union meets the stage-k selected
// set (no representation at all where it is empty), k in [k_lo, k_hi].
CheckResult check_boundary_reps(const Construction& st, uint32_t k_lo,
                            uint32_t k_hi);

// The five structural containments feeding the coverage argument.
CheckResult check_containments(const Construction& st, uint32_t k_lo,
                               uint32_t k_hi);

// Plain r >= 1 on the coverage windows for the case's basis, plus the
// single-point checks at N_{k+1} wherever a selection happened.
CheckResult check_basis_window(const Construction& st, uint32_t k_lo,
                               uint32_t k_hi);

// Deletion probe: removing min(basis) preserves r >= 1 on the windows, and
// preserves r(N_{i+1}) exactly for stages whose floor function exceeds it.
CheckResult check_deletion(const Construction& st, uint32_t k_lo,
                           uint32_t k_hi);

// Single-element dependence of N_{k+1} representations at qualifying stages.
CheckResult check_minimal_witness(const Construction& st);

// Post-run selection audit: activation / eligibility counts, per-stage
// eligibility of the recorded choices, registry uniqueness, exhaustive
// rank-minimality for k <= 6, and the special-mechanism sequence.
CheckResult check_selection(const Construction& st);

extern const std::vector<std::string> kAllCheckNames;

// Runs the named checks (empty = all) with ranges derived from the config.
std::vector<CheckResult> run_checks(const Construction& st,
                                    const std::vector<std::string>& names);

// Deterministically corrupts the construction so that the named check fails.
void apply_injection(Construction& st, const std::string& check_name);

}  // namespace addbasis
