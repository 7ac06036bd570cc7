#include "addbasis/engine.hpp"

#include <algorithm>

#include "addbasis/rng.hpp"
#include "addbasis/selector.hpp"

namespace addbasis {

namespace {

void note_birth(Construction& st, uint64_t x, uint32_t k) {
  if (x < st.birth.size() && st.birth[x] == 0) st.birth[x] = (uint8_t)k;
}

}  // namespace

Construction run_construction(const RunConfig& cfg) {
  if (cfg.kmax < 2) throw std::invalid_argument("kmax must be at least 2");
  if (cfg.kmax > 13) throw std::overflow_error("kmax too large for the dense universe");
  const uint64_t universe = 4 * stage_bound(cfg.kmax) + 1;

  Construction st(cfg);
  st.universe = universe;
  st.coloring = Coloring(rng::derive(cfg.seed, {rng::kStreamColoring}), universe);
  st.b = IntegerSet(universe);
  st.c = IntegerSet(universe);
  st.all = IntegerSet(universe);
  st.birth.assign(stage_bound(cfg.kmax) + 1, 0);

  Selector selector(cfg.spec, cfg.candidate_cap, cfg.count_cap);

  for (uint32_t k = 1; k <= cfg.kmax; ++k) {
    const uint64_t N = stage_bound(k);
    const uint64_t fourN = 4 * N;

    // selection first: it may only depend on stages < k
    Selector::Choice choice = selector.select(st, k);

    // hypothesis guard on the mechanism output
    if (!choice.F.empty()) {
      if (choice.F.back() > N)
        throw HypothesisViolation("selected element above N_k at stage " +
                                  std::to_string(k));
      for (uint64_t g : choice.G)
        if (!st.b.contains(g))
          throw HypothesisViolation("selected b-element not present");
      for (uint64_t h : choice.H)
        if (!st.c.contains(h))
          throw HypothesisViolation("selected c-element not present");
      std::vector<uint64_t> inter;
      std::set_intersection(choice.G.begin(), choice.G.end(), choice.H.begin(),
                            choice.H.end(), std::back_inserter(inter));
      if (!inter.empty())
        throw HypothesisViolation("selected halves overlap");
    }

    // stage parts: two fresh intervals plus the reflected complement
    IntegerSet parts(fourN + 1);
    {
      const IntegerSet f1 = integers_in(Interval(Rat(4 * (int64_t)N, 3),
                                                 Rat(2 * (int64_t)N)),
                                        fourN + 1);
      const IntegerSet f2 = integers_in(Interval(Rat(8 * (int64_t)N, 3),
                                                 Rat(3 * (int64_t)N)),
                                        fourN + 1);
      parts.or_with(f1);
      parts.or_with(f2);
      for (uint64_t x = 1; x < N; ++x)
        if (!st.all.contains(x)) parts.add(fourN - x);
    }

    StageRecord rec;
    rec.k = k;
    rec.bound = N;
    rec.block_b = st.coloring.restrict(1, parts);
    rec.block_c = st.coloring.restrict(2, parts);
    rec.sel = choice.F;
    rec.sel_b = choice.G;
    rec.sel_c = choice.H;
    rec.meta.active = choice.active;
    rec.meta.eligible_stage = choice.eligible_stage;
    rec.meta.rank = choice.rank;
    rec.meta.eligible_count = choice.eligible_count;
    rec.meta.fiber_value = choice.fiber;

    st.b.or_with(rec.block_b);
    st.c.or_with(rec.block_c);
    for (uint64_t x = rec.block_b.next_member(0); x != UINT64_MAX;
         x = rec.block_b.next_member(x + 1))
      note_birth(st, x, k);
    for (uint64_t x = rec.block_c.next_member(0); x != UINT64_MAX;
         x = rec.block_c.next_member(x + 1))
      note_birth(st, x, k);
    for (uint64_t g : choice.G) {
      st.b.add(fourN - g);
      note_birth(st, fourN - g, k);
    }
    for (uint64_t h : choice.H) {
      st.c.add(fourN - h);
      note_birth(st, fourN - h, k);
    }
    st.all.or_with(st.b);
    st.all.or_with(st.c);

    st.stages.push_back(std::move(rec));
  }
  return st;
}

}  // namespace addbasis
