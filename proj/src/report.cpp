#include "addbasis/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

namespace addbasis {

using nlohmann::ordered_json;

ordered_json config_json(const RunConfig& cfg) {
  ordered_json j;
  j["case"] = cfg.spec.name();
  j["p1"] = cfg.spec.p1;
  j["p2"] = cfg.spec.p2;
  j["p3"] = cfg.spec.p3;
  j["kmax"] = cfg.kmax;
  j["seed"] = cfg.seed;
  j["alpha"] = {{"num", cfg.alpha_num}, {"den", cfg.alpha_den}};
  j["rho"] = cfg.rho;
  j["kmin"] = cfg.kmin;
  j["candidate_cap"] = cfg.candidate_cap;
  j["count_cap"] = cfg.count_cap;
  return j;
}

RunConfig config_from_json(const ordered_json& j) {
  RunConfig cfg;
  cfg.spec = CaseSpec::from_name(j.at("case").get<std::string>());
  cfg.kmax = j.at("kmax").get<uint32_t>();
  cfg.seed = j.at("seed").get<uint64_t>();
  cfg.alpha_num = j.at("alpha").at("num").get<uint64_t>();
  cfg.alpha_den = j.at("alpha").at("den").get<uint64_t>();
  cfg.rho = j.at("rho").get<uint64_t>();
  cfg.kmin = j.at("kmin").get<uint32_t>();
  cfg.candidate_cap = j.at("candidate_cap").get<uint64_t>();
  cfg.count_cap = j.at("count_cap").get<uint64_t>();
  return cfg;
}

ordered_json run_report(const Construction& st) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = config_json(st.cfg);
  j["universe"] = st.universe;
  ordered_json mech;
  if (st.cfg.spec.mode() == CaseSpec::Mode::indecomposable_special) {
    mech["kind"] = "fiber";
    mech["k0"] = st.special_k0;
    mech["sequence"] = st.special_b_seq;
  } else {
    mech["kind"] = "registry";
    mech["activation_stage"] = st.activation_stage;
  }
  j["mechanism"] = mech;
  ordered_json stages = ordered_json::array();
  for (const StageRecord& rec : st.stages) {
    ordered_json s;
    s["k"] = rec.k;
    s["N"] = rec.bound;
    s["block_b_size"] = rec.block_b.cardinality();
    s["block_c_size"] = rec.block_c.cardinality();
    s["F"] = rec.sel;
    s["G"] = rec.sel_b;
    s["H"] = rec.sel_c;
    ordered_json m;
    m["active"] = rec.meta.active;
    m["eligible_stage"] = rec.meta.eligible_stage;
    m["rank"] = rec.meta.rank;
    m["eligible_count"] = rec.meta.eligible_count;
    if (rec.meta.fiber_value) m["fiber"] = rec.meta.fiber_value;
    s["selection"] = m;
    stages.push_back(s);
  }
  j["stages"] = stages;
  j["totals"] = {{"b_size", st.b.cardinality()},
                 {"c_size", st.c.cardinality()},
                 {"a_size", st.all.cardinality()}};
  return j;
}

std::string sum_rows_csv(const std::vector<SumTrialRow>& rows) {
  std::string out =
      "lemma,m,rep,trials,failures,failure_freq,min_count,mean_min\n";
  char buf[160];
  for (const SumTrialRow& r : rows) {
    std::snprintf(buf, sizeof buf, "sum,%llu,%u,%u,%u,%.6f,%lld,%.4f\n",
                  (unsigned long long)r.m, r.rep, r.trials, r.failures,
                  r.trials ? (double)r.failures / r.trials : 0.0,
                  (long long)r.min_count, r.mean_min);
    out += buf;
  }
  return out;
}

ordered_json sum_summary(const std::vector<SumTrialRow>& rows,
                         uint64_t seed) {
  ordered_json j;
  j["lemma"] = "sum";
  j["seed"] = seed;
  // median failure count per m over the repetitions
  std::map<uint64_t, std::vector<uint32_t>> per_m;
  uint32_t trials = 0;
  for (const SumTrialRow& r : rows) {
    per_m[r.m].push_back(r.failures);
    trials = r.trials;
  }
  ordered_json medians = ordered_json::array();
  bool monotone = true;
  int64_t prev = -1;
  for (auto& [m, v] : per_m) {
    std::sort(v.begin(), v.end());
    const uint32_t med = v[v.size() / 2];
    medians.push_back({{"m", m}, {"median_failures", med}, {"trials", trials}});
    if (prev >= 0 && (int64_t)med > prev) monotone = false;
    prev = med;
  }
  j["medians"] = medians;
  j["monotone_nonincreasing"] = monotone;
  if (!per_m.empty())
    j["zero_failures_at_largest_m"] =
        per_m.rbegin()->second.back() == 0;  // sorted: max repetition count
  return j;
}

std::string intersection_rows_csv(
    const std::vector<IntersectionTrialRow>& rows) {
  std::string out = "lemma,N,interval,trials,failures,min_count,mean_min\n";
  char buf[200];
  for (const IntersectionTrialRow& r : rows) {
    std::snprintf(buf, sizeof buf,
                  "intersection,%llu,\"%s\",%u,%u,%lld,%.4f\n",
                  (unsigned long long)r.N, r.interval.c_str(), r.trials,
                  r.failures, (long long)r.min_count, r.mean_min);
    out += buf;
  }
  return out;
}

ordered_json intersection_summary(
    const std::vector<IntersectionTrialRow>& rows, uint64_t seed) {
  ordered_json j;
  j["lemma"] = "intersection";
  j["seed"] = seed;
  ordered_json arr = ordered_json::array();
  bool any_fail = false;
  for (const IntersectionTrialRow& r : rows) {
    arr.push_back({{"N", r.N},
                   {"interval", r.interval},
                   {"failures", r.failures},
                   {"min_count", r.min_count},
                   {"mean_min", r.mean_min}});
    if (r.failures) any_fail = true;
  }
  j["rows"] = arr;
  j["any_failures"] = any_fail;
  return j;
}

std::string profile_csv(const ProfileResult& res) {
  std::string out = "n,hits,seeds,empirical,exact_num,exact_den,exact,cls,within\n";
  char buf[200];
  for (const ProfilePoint& pt : res.points) {
    const double emp =
        pt.seeds_used ? (double)pt.hits / pt.seeds_used : 0.0;
    std::snprintf(buf, sizeof buf,
                  "%llu,%u,%u,%.10f,%lld,%lld,%.10f,%u,%d\n",
                  (unsigned long long)pt.n, pt.hits, pt.seeds_used, emp,
                  (long long)pt.exact.num, (long long)pt.exact.den,
                  (double)pt.exact.num / (double)pt.exact.den, pt.cls,
                  pt.within_3sigma ? 1 : 0);
    out += buf;
  }
  return out;
}

ordered_json profile_summary(const ProfileResult& res, uint32_t k,
                             uint32_t nseeds, uint64_t seed) {
  ordered_json j;
  j["k"] = k;
  j["seeds"] = nseeds;
  j["seed"] = seed;
  j["points"] = res.points.size();
  j["within_3sigma"] = res.within;
  j["plateau_ordering_ok"] = res.plateau_ordering_ok;
  j["relative_levels"] = {{"full", res.level_full.str()},
                          {"second_reflection", res.level_refl2.str()},
                          {"third_reflection", res.level_refl3.str()},
                          {"fresh_base", res.level_base.str()}};
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << content;
  if (!f.good()) throw std::runtime_error("write failed: " + path);
}

std::string json_text(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace addbasis
