#include "addbasis/verifier.hpp"

#include <algorithm>
#include <set>

#include "addbasis/convolve.hpp"
#include "addbasis/rng.hpp"
#include "addbasis/selector.hpp"

namespace addbasis {

namespace {

std::string fmt_pair(uint64_t n, uint64_t x) {
  return std::to_string(n) + " = " + std::to_string(x) + " + " +
         std::to_string(n - x);
}

// all x <= n/2 with x and n-x members; bounded collection
std::vector<uint64_t> rep_pairs(const IntegerSet& s, uint64_t n,
                                size_t cap = SIZE_MAX) {
  std::vector<uint64_t> xs;
  for (uint64_t x = s.next_member(n >= s.limit() ? n - s.limit() + 1 : 0);
       x != UINT64_MAX && x <= n / 2; x = s.next_member(x + 1)) {
    if (n - x < s.limit() && s.contains(n - x)) {
      xs.push_back(x);
      if (xs.size() >= cap) break;
    }
  }
  return xs;
}

}  // namespace

nlohmann::ordered_json CheckResult::to_json() const {
  nlohmann::ordered_json j;
  j["name"] = name;
  j["window"] = window;
  j["pass"] = pass;
  j["inconclusive"] = inconclusive;
  j["witnesses"] = witnesses;
  j["metrics"] = metrics;
  return j;
}

CheckResult check_structure(const Construction& st) {
  CheckResult r;
  r.name = "structure";
  r.window = "k=1.." + std::to_string(st.cfg.kmax);

  IntegerSet rebuild_b(st.universe), rebuild_c(st.universe);
  for (const StageRecord& rec : st.stages) {
    const uint64_t N = rec.bound, fourN = 4 * rec.bound;
    // Property 1: strictly inside (N_k, N_{k+1})
    for (const IntegerSet* blk : {&rec.block_b, &rec.block_c}) {
      if (!blk->empty()) {
        if (blk->min_element() <= N)
          r.fail("stage " + std::to_string(rec.k) + ": block element " +
                 std::to_string(blk->min_element()) + " <= N_k");
        if (blk->max_element() >= fourN)
          r.fail("stage " + std::to_string(rec.k) + ": block element " +
                 std::to_string(blk->max_element()) + " >= N_{k+1}");
      }
      // cached cardinality matches a recount
      IntegerSet copy = *blk;
      copy.recount();
      if (copy.cardinality() != blk->cardinality())
        r.fail("stage " + std::to_string(rec.k) + ": cardinality cache drift");
    }
    if (rec.block_b.first_common(rec.block_c) != UINT64_MAX)
      r.fail("stage " + std::to_string(rec.k) + ": blocks intersect at " +
             std::to_string(rec.block_b.first_common(rec.block_c)));
    // selection hypothesis
    if (!rec.sel.empty()) {
      if (rec.sel.back() > N)
        r.fail("stage " + std::to_string(rec.k) + ": selected element " +
               std::to_string(rec.sel.back()) + " > N_k");
      std::vector<uint64_t> merged = rec.sel_b;
      merged.insert(merged.end(), rec.sel_c.begin(), rec.sel_c.end());
      std::sort(merged.begin(), merged.end());
      if (merged != rec.sel)
        r.fail("stage " + std::to_string(rec.k) +
               ": selected set is not the union of its halves");
      for (size_t i = 1; i < merged.size(); ++i)
        if (merged[i] == merged[i - 1])
          r.fail("stage " + std::to_string(rec.k) + ": halves overlap at " +
                 std::to_string(merged[i]));
      // reflected images land in [3N, 4N)
      for (uint64_t g : rec.sel_b)
        if (fourN - g < 3 * N || fourN - g >= fourN)
          r.fail("stage " + std::to_string(rec.k) + ": reflection of " +
                 std::to_string(g) + " outside [3N,4N)");
    }
    rebuild_b.or_with(rec.block_b);
    rebuild_c.or_with(rec.block_c);
    for (uint64_t g : rec.sel_b) rebuild_b.add(fourN - g);
    for (uint64_t h : rec.sel_c) rebuild_c.add(fourN - h);
  }
  // Property 2: cumulative disjointness, checked exhaustively
  const uint64_t common = st.b.first_common(st.c);
  if (common != UINT64_MAX)
    r.fail("cumulative sets intersect at " + std::to_string(common));
  // records reconstruct the cumulative sets exactly
  if (!(rebuild_b == st.b))
    r.fail("cumulative first set does not match its stage records (first "
           "difference " +
           std::to_string(std::min(rebuild_b.first_not_in(st.b),
                                   st.b.first_not_in(rebuild_b))) +
           ")");
  if (!(rebuild_c == st.c))
    r.fail("cumulative second set does not match its stage records");
  IntegerSet u = st.b;
  u.or_with(st.c);
  if (!(u == st.all)) r.fail("union set is not the union of the halves");
  r.metrics["b_size"] = st.b.cardinality();
  r.metrics["c_size"] = st.c.cardinality();
  r.metrics["universe"] = st.universe;
  return r;
}

CheckResult check_coverage(const Construction& st, uint32_t k_lo,
                            uint32_t k_hi) {
  CheckResult r;
  r.name = "coverage";
  r.window = "k=" + std::to_string(k_lo) + ".." + std::to_string(k_hi);
  const uint64_t rho = st.cfg.rho;
  auto mins = nlohmann::ordered_json::object();

  // below k_lo the guarantee is only asymptotic: report the earliest stage
  // from kmin whose window is fully covered, without failing on it
  if (st.cfg.kmin < k_lo) {
    uint32_t earliest = 0;
    for (uint32_t k = st.cfg.kmin; k < k_lo && k <= st.cfg.kmax; ++k) {
      const uint64_t N = stage_bound(k);
      bool ok = true;
      for (const IntegerSet& S : {st.b_at(k), st.c_at(k)}) {
        const std::vector<int64_t> rt =
            rep_counts_windowed_bulk(S, 3 * N / 2, 6 * N, rho);
        for (uint64_t n = 3 * N / 2; n < 6 * N && ok; ++n)
          if (n != 4 * N && rt[n - 3 * N / 2] < 1) ok = false;
      }
      if (ok) {
        earliest = k;
        break;
      }
    }
    r.metrics["earliest_covered_stage"] = earliest ? earliest : k_lo;
  }

  for (const char* side : {"b", "c"}) {
    int64_t prev_min = -1;
    for (uint32_t k = k_lo; k <= k_hi; ++k) {
      const uint64_t N = stage_bound(k);
      const uint64_t lo = 3 * N / 2, hi = 6 * N;
      const IntegerSet S = side[0] == 'b' ? st.b_at(k) : st.c_at(k);
      const std::vector<int64_t> rt =
          rep_counts_windowed_bulk(S, lo, hi, rho);
      int64_t mn = INT64_MAX;
      for (uint64_t n = lo; n < hi; ++n) {
        if (n == 4 * N) continue;
        const int64_t need = (int64_t)std::max<uint64_t>(
            1, rep_floor(n, st.cfg.alpha_num, st.cfg.alpha_den));
        const int64_t got = rt[n - lo];
        if (got < need)
          r.fail(std::string(side) + "(" + std::to_string(k) + "): n=" +
                 std::to_string(n) + " has " + std::to_string(got) +
                 " < " + std::to_string(need));
        mn = std::min(mn, got);
      }
      // profile vs pointwise kernel on sampled n
      const uint64_t key = rng::derive(st.cfg.seed, {0xc0ffee, k});
      for (int t = 0; t < 48; ++t) {
        uint64_t n = lo + rng::pick(key, (uint64_t)t, hi - lo);
        const uint64_t direct = rep_count_windowed(S, n, rho);
        if ((int64_t)direct != rt[n - lo])
          r.fail("profile mismatch at n=" + std::to_string(n) + ": bulk " +
                 std::to_string(rt[n - lo]) + " vs pointwise " +
                 std::to_string(direct));
      }
      mins[std::string(side) + std::to_string(k)] = mn;
      if (prev_min >= 0 && mn < prev_min)
        r.fail(std::string(side) + ": min windowed count dropped from " +
               std::to_string(prev_min) + " to " + std::to_string(mn) +
               " at k=" + std::to_string(k));
      prev_min = mn;
    }
  }
  r.metrics["min_windowed"] = mins;
  return r;
}

CheckResult check_boundary_reps(const Construction& st, uint32_t k_lo,
                            uint32_t k_hi) {
  CheckResult r;
  r.name = "boundary";
  r.window = "k=" + std::to_string(k_lo) + ".." + std::to_string(k_hi);
  auto reps_total = nlohmann::ordered_json::object();
  for (uint32_t k = k_lo; k <= k_hi && k <= st.cfg.kmax; ++k) {
    const uint64_t target = stage_bound(k + 1);
    const IntegerSet A = st.all_at(k);
    const StageRecord& rec = st.stage(k);
    const std::set<uint64_t> F(rec.sel.begin(), rec.sel.end());
    const std::vector<uint64_t> xs = rep_pairs(A, target);
    for (uint64_t x : xs) {
      if (!F.count(x) && !F.count(target - x))
        r.fail("k=" + std::to_string(k) + ": " + fmt_pair(target, x) +
               " avoids the selected set");
    }
    if (rec.sel.empty() && !xs.empty())
      r.fail("k=" + std::to_string(k) + ": " + std::to_string(xs.size()) +
             " representations of N_{k+1} despite empty selection");
    reps_total["k" + std::to_string(k)] = xs.size();
  }
  r.metrics["representations"] = reps_total;
  return r;
}

CheckResult check_containments(const Construction& st, uint32_t k_lo,
                               uint32_t k_hi) {
  CheckResult r;
  r.name = "containments";
  if (k_lo < 4) k_lo = 4;  // needs stage k-3
  r.window = "k=" + std::to_string(k_lo) + ".." + std::to_string(k_hi);
  for (uint32_t k = k_lo; k <= k_hi && k <= st.cfg.kmax; ++k) {
    const int64_t N = (int64_t)stage_bound(k);
    const uint64_t lim = 4 * (uint64_t)N + 1;
    const IntegerSet Bk = st.b_at(k), Ck = st.c_at(k);
    const Interval ivs[4] = {Interval(Rat(N, 24), Rat(3 * N, 64)),
                             Interval(Rat(2 * N, 3), Rat(3 * N, 4)),
                             Interval(Rat(4 * N, 3), Rat(2 * N)),
                             Interval(Rat(8 * N, 3), Rat(3 * N))};
    for (int which = 1; which <= 2; ++which) {
      const IntegerSet& cum = which == 1 ? Bk : Ck;
      for (const Interval& iv : ivs) {
        const IntegerSet sub =
            st.coloring.restrict(which, integers_in(iv, lim));
        const uint64_t miss = sub.first_not_in(cum);
        if (miss != UINT64_MAX)
          r.fail("k=" + std::to_string(k) + ": class-" +
                 std::to_string(which) + " point " + std::to_string(miss) +
                 " of " + iv.str() + " missing");
      }
      // reflected third-class interval
      const IntegerSet inner = st.coloring.restrict(
          3, integers_in(Interval(Rat(N, 4), Rat(3 * N, 4)), lim));
      const IntegerSet refl = st.coloring.restrict(
          which, reflect(inner, 4 * (uint64_t)N, lim));
      const uint64_t miss = refl.first_not_in(cum);
      if (miss != UINT64_MAX)
        r.fail("k=" + std::to_string(k) + ": reflected class-" +
               std::to_string(which) + " point " + std::to_string(miss) +
               " missing");
    }
  }
  return r;
}

CheckResult check_basis_window(const Construction& st, uint32_t k_lo,
                               uint32_t k_hi) {
  CheckResult r;
  r.name = "basiswindow";
  r.window = "k=" + std::to_string(k_lo) + ".." + std::to_string(k_hi);
  auto mins = nlohmann::ordered_json::object();
  const bool split = st.cfg.spec.mode() == CaseSpec::Mode::decomposable;
  for (uint32_t k = k_lo; k <= k_hi && k <= st.cfg.kmax; ++k) {
    const uint64_t N = stage_bound(k);
    const uint64_t lo = 3 * N / 2, hi = 6 * N;
    // the case's basis, and both halves separately when decomposability is
    // claimed (each half must already be a basis on its own)
    std::vector<std::pair<std::string, IntegerSet>> sets;
    sets.emplace_back("a", st.cfg.spec.a_choice() == CaseSpec::AChoice::union_bc
                               ? st.all_at(k)
                               : st.b_at(k));
    if (split) {
      sets.emplace_back("b", st.b_at(k));
      sets.emplace_back("c", st.c_at(k));
    }
    for (const auto& [tag, S] : sets) {
      const std::vector<int64_t> rc = rep_counts_bulk(S, lo, hi);
      int64_t mn = INT64_MAX;
      for (uint64_t n = lo; n < hi; ++n) {
        if (n == 4 * N) continue;
        if (rc[n - lo] < 1)
          r.fail(tag + "(" + std::to_string(k) + "): n=" + std::to_string(n) +
                 " has no representation");
        mn = std::min(mn, rc[n - lo]);
      }
      mins[tag + std::to_string(k)] = mn;
    }
    // single-point coverage of N_{k+1} through the selected halves
    const StageRecord& rec = st.stage(k);
    if (!rec.sel_b.empty() && rep_count(st.b_at(k), stage_bound(k + 1)) < 1)
      r.fail("k=" + std::to_string(k) +
             ": N_{k+1} unrepresented over first set despite selection");
    if (!rec.sel_c.empty() && rep_count(st.c_at(k), stage_bound(k + 1)) < 1)
      r.fail("k=" + std::to_string(k) +
             ": N_{k+1} unrepresented over second set despite selection");
  }
  r.metrics["min_plain"] = mins;
  return r;
}

CheckResult check_deletion(const Construction& st, uint32_t k_lo,
                           uint32_t k_hi) {
  CheckResult r;
  r.name = "deletion";
  r.window = "k=" + std::to_string(k_lo) + ".." + std::to_string(k_hi);
  const IntegerSet& D = st.basis();
  if (D.empty()) {
    r.inconclusive = true;
    r.note("basis empty");
    return r;
  }
  const uint64_t d = D.min_element();
  IntegerSet Dp = D;
  Dp.remove(d);
  r.metrics["removed"] = d;

  const uint64_t top = 6 * stage_bound(std::min(k_hi, st.cfg.kmax));
  const std::vector<int64_t> counts = ordered_counts(Dp, top);
  for (uint32_t k = k_lo; k <= k_hi && k <= st.cfg.kmax; ++k) {
    const uint64_t N = stage_bound(k);
    for (uint64_t n = 3 * N / 2; n < 6 * N; ++n) {
      if (n == 4 * N) continue;
      if (counts[n] < 1)
        r.fail("k=" + std::to_string(k) + ": n=" + std::to_string(n) +
               " lost all representations after deleting " +
               std::to_string(d));
    }
  }

  // exact preservation at N_{i+1} for stages whose floor exceeds d
  int applied = 0;
  for (uint32_t i = 1; i <= st.cfg.kmax; ++i) {
    if (st.cfg.spec.psi(i) <= d) continue;
    ++applied;
    const uint64_t target = stage_bound(i + 1);
    const auto xs = rep_pairs(D, target);
    for (uint64_t x : xs)
      if (x == d || target - x == d)
        r.fail("stage " + std::to_string(i) + ": " + fmt_pair(target, x) +
               " uses the deleted minimum");
    if (rep_count(Dp, target) != rep_count(D, target))
      r.fail("stage " + std::to_string(i) +
             ": representation count of N_{i+1} changed");
  }
  r.metrics["exact_preservation_stages"] = applied;
  return r;
}

CheckResult check_minimal_witness(const Construction& st) {
  CheckResult r;
  r.name = "minimalwitness";
  r.window = "k<=" + std::to_string(st.cfg.kmax);
  const CaseSpec& spec = st.cfg.spec;
  if (!spec.p3) {
    r.inconclusive = true;
    r.note("floor function is unbounded here; no witness expected");
    return r;
  }
  int qualifying = 0;
  if (spec.mode() == CaseSpec::Mode::decomposable ||
      spec.mode() == CaseSpec::Mode::indecomposable_special) {
    for (const StageRecord& rec : st.stages) {
      if (rec.sel_b.size() != 1) continue;
      ++qualifying;
      const uint64_t b = rec.sel_b[0];
      const uint64_t target = stage_bound(rec.k + 1);
      IntegerSet Bk = st.b_at(rec.k);
      const uint64_t with = rep_count(Bk, target);
      Bk.remove(b);
      const uint64_t without = rep_count(Bk, target);
      if (with < 1)
        r.fail("k=" + std::to_string(rec.k) +
               ": N_{k+1} unrepresented despite singleton selection");
      if (without != 0)
        r.fail("k=" + std::to_string(rec.k) + ": removing " +
               std::to_string(b) + " leaves " + std::to_string(without) +
               " representations of N_{k+1}");
      if (r.pass)
        r.note("k=" + std::to_string(rec.k) + ": element " +
               std::to_string(b) + " pivots N_{k+1}");
    }
  } else {
    // growing selections: build the witness subset by removing, per stage
    // threshold N_k, one more small element that is neither selected nor a
    // reflected image, then look for a stage whose whole selection falls
    // into the removed prefix plus a single kept element
    std::set<uint64_t> keep;  // selected elements and reflected images
    for (const StageRecord& rec : st.stages) {
      for (uint64_t e : rec.sel) keep.insert(e);
      for (uint64_t g : rec.sel_b) keep.insert(4 * rec.bound - g);
    }
    std::vector<uint64_t> removed;
    uint64_t cursor = 1;
    for (uint32_t k = 2; k <= st.cfg.kmax; ++k) {
      // grow the removal set to k-1 elements <= N_k
      while (removed.size() < k - 1) {
        const uint64_t x = st.b.next_member(cursor);
        if (x == UINT64_MAX || x > stage_bound(k)) break;
        cursor = x + 1;
        if (keep.count(x)) continue;
        removed.push_back(x);
      }
      if (removed.size() != k - 1) {
        r.note("removal set saturated below stage " + std::to_string(k));
        break;
      }
    }
    r.metrics["removed_elements"] = removed;
    const std::set<uint64_t> rm(removed.begin(), removed.end());
    int witnessed = 0;
    for (uint64_t b : keep) {
      for (const StageRecord& rec : st.stages) {
        if (rec.sel_b.empty()) continue;
        bool inside = true;
        for (uint64_t g : rec.sel_b)
          if (g != b && !rm.count(g)) inside = false;
        if (inside) {
          ++witnessed;
          ++qualifying;
          r.note("k=" + std::to_string(rec.k) + ": selection leans on " +
                 std::to_string(b) + " once the removed prefix is gone");
          break;
        }
      }
    }
    r.metrics["witnessed_elements"] = witnessed;
  }
  r.metrics["qualifying_stages"] = qualifying;
  if (qualifying == 0) {
    r.inconclusive = true;
    r.note("no finite-stage witness at this scale");
  }
  return r;
}

CheckResult check_selection(const Construction& st) {
  CheckResult r;
  r.name = "selection";
  r.window = "k=1.." + std::to_string(st.cfg.kmax);
  const CaseSpec& spec = st.cfg.spec;

  if (spec.mode() == CaseSpec::Mode::indecomposable_special) {
    const uint32_t k0 = st.special_k0;
    r.metrics["k0"] = k0;
    if (k0 == 0) {
      r.fail("special mechanism never initialised");
      return r;
    }
    for (uint32_t k = 1; k <= st.cfg.kmax; ++k) {
      const uint64_t sz = st.b_at(k).cardinality();
      if (!(sz > (uint64_t)(k > k0 ? k - k0 : 0)))
        r.fail("k=" + std::to_string(k) + ": first set too small (" +
               std::to_string(sz) + ") for offset " + std::to_string(k0));
    }
    for (size_t j = 1; j < st.special_b_seq.size(); ++j)
      if (st.special_b_seq[j] <= st.special_b_seq[j - 1])
        r.fail("selected sequence not strictly increasing at index " +
               std::to_string(j + 1));
    auto uses = nlohmann::ordered_json::object();
    for (const StageRecord& rec : st.stages) {
      if (rec.k <= k0) {
        if (!rec.sel.empty())
          r.fail("k=" + std::to_string(rec.k) + ": selection before offset");
        continue;
      }
      const uint64_t j = fiber_value(rec.k - k0);
      if (rec.sel.size() != 1 || j > st.special_b_seq.size() ||
          rec.sel[0] != st.special_b_seq[j - 1])
        r.fail("k=" + std::to_string(rec.k) +
               ": selection disagrees with the fiber sequence");
      uses["b" + std::to_string(j)] =
          (int)uses.value("b" + std::to_string(j), 0) + 1;
    }
    r.metrics["uses"] = uses;
    return r;
  }

  // registry mechanism
  r.metrics["activation_stage"] = st.activation_stage;
  std::set<std::vector<uint64_t>> replay_seen;
  uint64_t counts_checked = 0;
  for (const StageRecord& rec : st.stages) {
    const uint32_t k = rec.k;
    const uint64_t count = count_stage_eligible(st, k, st.cfg.count_cap);
    if (count != rec.meta.eligible_count)
      r.fail("k=" + std::to_string(k) + ": eligible count recomputes to " +
             std::to_string(count) + " != recorded " +
             std::to_string(rec.meta.eligible_count));
    ++counts_checked;
    if (st.activation_stage && k > st.activation_stage && count < k)
      r.fail("k=" + std::to_string(k) + ": only " + std::to_string(count) +
             " eligible sets after activation");
    if (st.activation_stage && k >= st.activation_stage && rec.sel.empty())
      r.fail("k=" + std::to_string(k) + ": no selection at an active stage");
    if ((!st.activation_stage || k < st.activation_stage) && !rec.sel.empty())
      r.fail("k=" + std::to_string(k) + ": selection before activation");
    if (rec.sel.empty()) continue;

    uint64_t stage = 0;
    if (!eligible_at(st, k, rec.sel, &stage))
      r.fail("k=" + std::to_string(k) + ": recorded selection not eligible");
    if (replay_seen.count(rec.sel))
      r.fail("k=" + std::to_string(k) + ": selection repeats an earlier set");

    // exhaustive rank-minimality for small stages
    if (k <= 6) {
      bool reached = false;
      enumerate_rank_order(st, k, st.cfg.candidate_cap,
                           [&](const std::vector<uint64_t>& cand) {
                             if (cand == rec.sel) {
                               reached = true;
                               return false;
                             }
                             uint64_t s = 0;
                             if (eligible_at(st, k, cand, &s) &&
                                 !replay_seen.count(cand)) {
                               r.fail("k=" + std::to_string(k) +
                                      ": unseen eligible set with smaller "
                                      "rank exists");
                               return false;
                             }
                             return true;
                           });
      if (!reached && r.pass)
        r.fail("k=" + std::to_string(k) +
               ": recorded selection not reachable in rank order");
    }
    replay_seen.insert(rec.sel);
  }
  r.metrics["stages_with_selection"] = replay_seen.size();
  r.metrics["counts_checked"] = counts_checked;
  return r;
}

const std::vector<std::string> kAllCheckNames = {
    "structure",   "coverage", "boundary",      "containments",
    "basiswindow", "deletion",  "minimalwitness", "selection"};

std::vector<CheckResult> run_checks(const Construction& st,
                                    const std::vector<std::string>& names) {
  const uint32_t kmax = st.cfg.kmax;
  const uint32_t kmin = st.cfg.kmin;
  const uint32_t kcov = std::max<uint32_t>(kmin, std::min<uint32_t>(7, kmax));
  std::vector<CheckResult> out;
  const std::vector<std::string>& todo =
      names.empty() ? kAllCheckNames : names;
  for (const std::string& name : todo) {
    if (name == "structure")
      out.push_back(check_structure(st));
    else if (name == "coverage")
      out.push_back(check_coverage(st, kcov, kmax));
    else if (name == "boundary")
      out.push_back(check_boundary_reps(st, std::min<uint32_t>(3, kmax), kmax));
    else if (name == "containments")
      out.push_back(check_containments(st, kmin, kmax));
    else if (name == "basiswindow")
      out.push_back(check_basis_window(st, kcov, kmax));
    else if (name == "deletion")
      out.push_back(check_deletion(st, kcov, kmax));
    else if (name == "minimalwitness")
      out.push_back(check_minimal_witness(st));
    else if (name == "selection")
      out.push_back(check_selection(st));
    else
      throw std::invalid_argument("unknown check: " + name);
  }
  return out;
}

void apply_injection(Construction& st, const std::string& which) {
  const uint32_t kmax = st.cfg.kmax;
  const uint64_t N = stage_bound(kmax);

  auto clear_pairs = [&](uint64_t n, uint64_t x_lo) {
    // remove the larger element of every representation x + (n-x)
    for (uint64_t x = st.b.next_member(x_lo); x != UINT64_MAX && x <= n / 2;
         x = st.b.next_member(x + 1))
      if (n - x < st.universe) {
        st.b.remove(n - x);
        st.c.remove(n - x);
      }
    for (uint64_t x = st.c.next_member(x_lo); x != UINT64_MAX && x <= n / 2;
         x = st.c.next_member(x + 1))
      if (n - x < st.universe) {
        st.b.remove(n - x);
        st.c.remove(n - x);
      }
    st.all = st.b;
    st.all.or_with(st.c);
  };

  if (which == "structure") {
    const uint64_t x = st.b.next_member(N + 1);
    st.c.add(x);  // overlap
  } else if (which == "coverage") {
    const uint64_t n = 3 * N / 2;
    clear_pairs(n, (n + st.cfg.rho) / (st.cfg.rho + 1));
  } else if (which == "boundary") {
    uint64_t x = 1;
    while (st.all.contains(x) || st.all.contains(4 * N - x)) ++x;
    st.b.add(x);
    st.b.add(4 * N - x);
    st.all.add(x);
    st.all.add(4 * N - x);
  } else if (which == "containments") {
    const IntegerSet probe = st.coloring.restrict(
        1, integers_in(Interval(Rat(4 * (int64_t)N, 3), Rat(2 * (int64_t)N)),
                       st.universe));
    const uint64_t x = probe.min_element();
    st.b.remove(x);
    st.all.remove(x);
  } else if (which == "basiswindow" || which == "deletion") {
    const uint64_t n = 3 * N / 2 + 1;
    clear_pairs(n, 1);
  } else if (which == "minimalwitness") {
    for (StageRecord& rec : st.stages) {
      if (rec.sel_b.size() != 1) continue;
      const uint64_t fourN = 4 * rec.bound;
      uint64_t x = 1;
      while (st.b.contains(x) || x == rec.sel_b[0] ||
             st.b.contains(fourN - x))
        ++x;
      st.b.add(x);
      st.b.add(fourN - x);
      st.all.add(x);
      st.all.add(fourN - x);
      break;
    }
  } else if (which == "selection") {
    // duplicate the first selection into the last selected stage
    StageRecord* first = nullptr;
    StageRecord* last = nullptr;
    for (StageRecord& rec : st.stages)
      if (!rec.sel.empty()) {
        if (!first) first = &rec;
        last = &rec;
      }
    if (first && last && first != last) {
      last->sel = first->sel;
      last->sel_b = first->sel_b;
      last->sel_c = first->sel_c;
    }
  } else {
    throw std::invalid_argument("unknown injection: " + which);
  }
}

}  // namespace addbasis
