#include "addbasis/selector.hpp"

#include <algorithm>

#include "addbasis/engine.hpp"

namespace addbasis {

uint64_t fiber_value(uint64_t j) {
  // row r covers indices (r-1)r/2 + 1 .. r(r+1)/2 and lists 1..r
  uint64_t r = 1;
  while (r * (r + 1) / 2 < j) ++r;
  return j - (r - 1) * r / 2;
}

uint64_t sat_binom(uint64_t n, uint64_t k, uint64_t cap) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 c = 1;
  for (uint64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;  // exact at each step
    if (c > cap) return cap;
  }
  return (uint64_t)c;
}

namespace {

// smallest stage i >= 1 with N_i >= m
uint64_t stage_covering(uint64_t m) {
  uint64_t i = 1;
  while (stage_bound(i) < m) ++i;
  return i;
}

uint64_t max_birth(const Construction& st, const std::vector<uint64_t>& elems) {
  uint64_t mb = 0;
  for (uint64_t e : elems) mb = std::max<uint64_t>(mb, st.birth[e]);
  return mb;
}

}  // namespace

bool eligible_at(const Construction& st, uint32_t k,
                 const std::vector<uint64_t>& elems, uint64_t* stage_out) {
  if (elems.empty()) return false;
  const CaseSpec& spec = st.cfg.spec;
  const uint64_t s1 = elems.front();
  const uint64_t m = elems.back();
  const uint64_t card = elems.size();
  if (m > stage_bound(k)) return false;

  // membership constraints
  if (spec.mode() == CaseSpec::Mode::decomposable) {
    bool in_b = false, in_c = false;
    for (uint64_t e : elems) {
      if (st.b.contains(e))
        in_b = true;
      else if (st.c.contains(e))
        in_c = true;
      else
        return false;
    }
    if (!in_b || !in_c) return false;
  } else {
    for (uint64_t e : elems)
      if (!st.b.contains(e)) return false;
  }

  uint64_t i_min = std::max(stage_covering(m), max_birth(st, elems) + 1);
  if (i_min > k) return false;

  switch (spec.phi_kind()) {
    case CaseSpec::Phi::identity: {
      const uint64_t i = card;  // phi(i) = i
      if (i < i_min || i > k) return false;
      if (spec.psi(i) > s1) return false;
      if (stage_out) *stage_out = i;
      return true;
    }
    case CaseSpec::Phi::const2:
      if (card != 2) return false;
      break;
    case CaseSpec::Phi::const1:
      if (card != 1) return false;
      break;
  }
  // constant phi: any stage i in [i_min, k] with psi(i) <= s1 works; psi is
  // either constant 1 or the identity, so the minimal i decides.
  if (spec.psi(i_min) > s1) return false;
  if (stage_out) *stage_out = i_min;
  return true;
}

uint64_t count_stage_eligible(const Construction& st, uint32_t k,
                              uint64_t cap) {
  const CaseSpec& spec = st.cfg.spec;
  const uint64_t phi = spec.phi(k);
  const uint64_t psi = spec.psi(k);
  const uint64_t hi = stage_bound(k);
  // elements of A(k-1) within [psi, N_k]: birth <= k-1
  uint64_t in_b = 0, in_c = 0;
  const uint64_t scan_hi = std::min<uint64_t>(hi, st.birth.size() - 1);
  for (uint64_t x = st.all.next_member(psi); x != UINT64_MAX && x <= scan_hi;
       x = st.all.next_member(x + 1)) {
    if (st.birth[x] == 0 || st.birth[x] >= k) continue;
    if (st.b.contains(x))
      ++in_b;
    else
      ++in_c;
  }
  if (spec.mode() == CaseSpec::Mode::decomposable) {
    const uint64_t total = sat_binom(in_b + in_c, phi, cap);
    const uint64_t pure = sat_binom(in_b, phi, cap) + sat_binom(in_c, phi, cap);
    return total >= cap ? cap : (total > pure ? total - pure : 0);
  }
  return sat_binom(in_b, phi, cap);
}

bool enumerate_rank_order(
    const Construction& st, uint32_t k, uint64_t cap,
    const std::function<bool(const std::vector<uint64_t>&)>& visit) {
  const CaseSpec& spec = st.cfg.spec;
  const uint64_t n_k = stage_bound(k);
  // candidate pool: all current members <= N_k (ascending)
  std::vector<uint64_t> pool;
  const uint64_t scan_hi = std::min<uint64_t>(n_k, st.birth.size() - 1);
  for (uint64_t x = st.all.next_member(1); x != UINT64_MAX && x <= scan_hi;
       x = st.all.next_member(x + 1))
    pool.push_back(x);

  uint64_t budget = cap;
  std::vector<uint64_t> elems;

  // lexicographic (c-1)-subsets of pool[0..mi), then append pool[mi]
  std::function<bool(size_t, size_t, size_t)> combos = [&](size_t mi,
                                                           size_t need,
                                                           size_t from) {
    if (need == 0) {
      if (budget == 0) return false;
      --budget;
      elems.push_back(pool[mi]);
      const bool go_on = visit(elems);
      elems.pop_back();
      return go_on;
    }
    for (size_t j = from; j + need <= mi; ++j) {
      elems.push_back(pool[j]);
      const bool go_on = combos(mi, need - 1, j + 1);
      elems.pop_back();
      if (!go_on) return false;
    }
    return true;
  };

  for (size_t mi = 0; mi < pool.size(); ++mi) {
    uint64_t c_lo = 1, c_hi = 1;
    switch (spec.phi_kind()) {
      case CaseSpec::Phi::identity:
        c_lo = spec.mode() == CaseSpec::Mode::decomposable ? 2 : 1;
        c_hi = std::min<uint64_t>(k, mi + 1);
        break;
      case CaseSpec::Phi::const2:
        c_lo = c_hi = 2;
        break;
      case CaseSpec::Phi::const1:
        c_lo = c_hi = 1;
        break;
    }
    for (uint64_t card = c_lo; card <= c_hi; ++card) {
      if (card - 1 > mi) break;
      if (!combos(mi, card - 1, 0)) return budget > 0;
    }
  }
  return true;
}

Selector::Choice Selector::select(Construction& st, uint32_t k) {
  Choice out;

  if (spec_.mode() == CaseSpec::Mode::indecomposable_special) {
    // fixed singleton sequence driven by the fiber enumeration
    if (st.special_k0 == 0) {
      for (uint32_t i = 1; i < k; ++i)
        if (st.b_at(i).cardinality() >= 1) {
          st.special_k0 = i;
          break;
        }
    }
    if (st.special_k0 == 0 || k <= st.special_k0) return out;
    const uint64_t j = fiber_value(k - st.special_k0);
    while (st.special_b_seq.size() < j) {
      const uint64_t t = st.special_b_seq.size() + 1;  // next index
      const uint64_t prev =
          st.special_b_seq.empty() ? 0 : st.special_b_seq.back();
      const uint64_t within = stage_bound(t + st.special_k0 - 1 + 1);  // N_{t+k0}
      const uint64_t next = st.b.next_member(prev + 1);
      if (next == UINT64_MAX || next > within)
        throw SelectionExhausted(
            "fiber mechanism ran out of elements at index " +
            std::to_string(t));
      st.special_b_seq.push_back(next);
    }
    out.active = true;
    out.fiber = j;
    out.F = {st.special_b_seq[j - 1]};
    out.G = out.F;
    out.eligible_stage = k;
    return out;
  }

  // registry mechanism
  out.eligible_count = count_stage_eligible(st, k, count_cap_);
  if (!active_ && out.eligible_count >= k) {
    active_ = true;
    st.activation_stage = k;
  }
  if (!active_) return out;
  out.active = true;

  uint64_t rank = 0;
  bool found = false;
  const bool within_cap = enumerate_rank_order(
      st, k, candidate_cap_, [&](const std::vector<uint64_t>& elems) {
        ++rank;
        uint64_t stage = 0;
        if (!eligible_at(st, k, elems, &stage)) return true;
        if (seen_.count(elems)) return true;
        out.F = elems;
        out.eligible_stage = stage;
        out.rank = rank;
        found = true;
        return false;  // stop
      });
  if (!found) {
    if (!within_cap)
      throw SelectionExhausted("candidate cap exhausted at stage " +
                               std::to_string(k));
    throw SelectionExhausted("no unseen eligible set at active stage " +
                             std::to_string(k));
  }
  seen_.insert(out.F);
  for (uint64_t e : out.F) {
    if (st.b.contains(e))
      out.G.push_back(e);
    else
      out.H.push_back(e);
  }
  if (spec_.mode() != CaseSpec::Mode::decomposable && !out.H.empty())
    throw HypothesisViolation("selected element outside the first set");
  return out;
}

}  // namespace addbasis
