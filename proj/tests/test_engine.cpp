#include <doctest.h>

#include "addbasis/engine.hpp"

using namespace addbasis;

TEST_CASE("stage bounds are powers of four") {
  CHECK(stage_bound(1) == 16);
  CHECK(stage_bound(5) == 4096);
  CHECK(stage_bound(10) == 4194304);
  CHECK_THROWS_AS(stage_bound(40), std::overflow_error);
}

TEST_CASE("floor function") {
  CHECK(rep_floor(100000000, 1, 100000000) == 1);
  CHECK(rep_floor(99999999, 1, 100000000) == 0);
  CHECK(rep_floor(300000000, 1, 100000000) == 3);
  CHECK(rep_floor(7, 2, 3) == 4);
  CHECK_THROWS_AS(rep_floor(5, 1, 0), std::invalid_argument);
}

TEST_CASE("stage 1 assembles the hand-computed parts") {
  RunConfig cfg;
  cfg.spec = CaseSpec::from_name("TTF");
  cfg.kmax = 2;
  cfg.seed = 42;
  const Construction st = run_construction(cfg);
  const StageRecord& s1 = st.stage(1);
  CHECK(s1.bound == 16);
  // with nothing constructed before stage 1, the parts are
  // {22..31} u {43..47} u {49..63}
  IntegerSet parts(65);
  parts.add_range(22, 31);
  parts.add_range(43, 47);
  parts.add_range(49, 63);
  const IntegerSet expect_b = st.coloring.restrict(1, parts);
  const IntegerSet expect_c = st.coloring.restrict(2, parts);
  CHECK(s1.block_b == expect_b);
  CHECK(s1.block_c == expect_c);
  CHECK(s1.sel.empty());  // nothing eligible before anything exists
}

TEST_CASE("runs are deterministic") {
  RunConfig cfg;
  cfg.spec = CaseSpec::from_name("FTT");
  cfg.kmax = 6;
  cfg.seed = 1234;
  const Construction a = run_construction(cfg);
  const Construction b = run_construction(cfg);
  CHECK(a.b == b.b);
  CHECK(a.c == b.c);
  CHECK(a.activation_stage == b.activation_stage);
  REQUIRE(a.stages.size() == b.stages.size());
  for (size_t i = 0; i < a.stages.size(); ++i) {
    CHECK(a.stages[i].sel == b.stages[i].sel);
    CHECK(a.stages[i].block_b == b.stages[i].block_b);
  }
}

TEST_CASE("stage blocks stay strictly inside their dyadic range") {
  for (const char* name : {"TTF", "FFF", "FFT"}) {
    RunConfig cfg;
    cfg.spec = CaseSpec::from_name(name);
    cfg.kmax = 6;
    cfg.seed = 42;
    const Construction st = run_construction(cfg);
    for (const StageRecord& rec : st.stages) {
      const uint64_t N = rec.bound;
      for (const IntegerSet* blk : {&rec.block_b, &rec.block_c}) {
        if (blk->empty()) continue;
        CHECK(blk->min_element() > N);
        CHECK(blk->max_element() < 4 * N);
      }
    }
    CHECK(st.b.first_common(st.c) == UINT64_MAX);
  }
}

TEST_CASE("cumulative views are prefixes") {
  RunConfig cfg;
  cfg.spec = CaseSpec::from_name("TTF");
  cfg.kmax = 6;
  cfg.seed = 42;
  const Construction st = run_construction(cfg);
  for (uint32_t k = 1; k <= 5; ++k) {
    const IntegerSet bk = st.b_at(k);
    CHECK(bk.limit() == stage_bound(k + 1) + 1);
    // prefix view agrees with the full set on its range
    for (uint64_t x = bk.next_member(0); x != UINT64_MAX;
         x = bk.next_member(x + 1))
      CHECK(st.b.contains(x));
    CHECK(bk.cardinality() == st.b.count_in_range(0, stage_bound(k + 1)));
  }
}

TEST_CASE("birth stages respect block membership") {
  RunConfig cfg;
  cfg.spec = CaseSpec::from_name("TFF");
  cfg.kmax = 6;
  cfg.seed = 42;
  const Construction st = run_construction(cfg);
  for (uint64_t x = 0; x < st.birth.size(); ++x) {
    if (st.birth[x] == 0) {
      CHECK(!st.all.contains(x));
      continue;
    }
    const uint32_t k = st.birth[x];
    CHECK(st.all.contains(x));
    CHECK(x > stage_bound(k));      // inside (N_k, N_{k+1})
    CHECK(x < stage_bound(k + 1));
  }
}

TEST_CASE("kmax bounds are enforced") {
  RunConfig cfg;
  cfg.spec = CaseSpec::from_name("TTF");
  cfg.kmax = 1;
  CHECK_THROWS_AS(run_construction(cfg), std::invalid_argument);
  cfg.kmax = 20;
  CHECK_THROWS_AS(run_construction(cfg), std::overflow_error);
}
