// Command-line front end: construct / verify / simulate / profile.
// Exit codes: 0 success, 1 check or hypothesis failure, 2 usage error.
#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "addbasis/report.hpp"

using namespace addbasis;

namespace {

struct CommonOpts {
  std::string case_name;
  bool p1 = false, p2 = false, p3 = false;
  bool p_flags_used = false;
  RunConfig cfg;
  std::string alpha_text = "1/100000000";
};

void add_construct_opts(CLI::App* app, CommonOpts& o) {
  app->add_option("--case", o.case_name,
                  "property combination, e.g. TTF (three letters)");
  auto* f1 = app->add_flag("--p1", o.p1, "divergent representation counts");
  auto* f2 = app->add_flag("--p2", o.p2, "decomposable basis");
  auto* f3 = app->add_flag("--p3", o.p3, "contains a minimal basis");
  f1->each([&o](const std::string&) { o.p_flags_used = true; });
  f2->each([&o](const std::string&) { o.p_flags_used = true; });
  f3->each([&o](const std::string&) { o.p_flags_used = true; });
  app->add_option("--kmax", o.cfg.kmax, "stages to build")->default_val(10);
  app->add_option("--seed", o.cfg.seed, "run seed")->default_val(42);
  app->add_option("--alpha", o.alpha_text,
                  "floor-function slope as NUM/DEN")
      ->default_val("1/100000000");
  app->add_option("--rho", o.cfg.rho, "ratio window bound")->default_val(100);
  app->add_option("--kmin", o.cfg.kmin, "first verified stage")
      ->default_val(4);
  app->add_option("--candidate-cap", o.cfg.candidate_cap,
                  "selection enumeration cap")
      ->default_val(1000000);
}

void finish_opts(CommonOpts& o) {
  if (!o.case_name.empty() && o.p_flags_used)
    throw CLI::ValidationError(
        "--case conflicts with --p1/--p2/--p3; use one form");
  if (!o.case_name.empty())
    o.cfg.spec = CaseSpec::from_name(o.case_name);
  else {
    o.cfg.spec.p1 = o.p1;
    o.cfg.spec.p2 = o.p2;
    o.cfg.spec.p3 = o.p3;
  }
  const auto slash = o.alpha_text.find('/');
  if (slash == std::string::npos)
    throw CLI::ValidationError("--alpha must be NUM/DEN");
  try {
    o.cfg.alpha_num = std::stoull(o.alpha_text.substr(0, slash));
    o.cfg.alpha_den = std::stoull(o.alpha_text.substr(slash + 1));
  } catch (const std::exception&) {
    throw CLI::ValidationError("--alpha must be NUM/DEN with integers");
  }
  if (o.cfg.alpha_den == 0)
    throw CLI::ValidationError("--alpha denominator must be positive");
}

std::vector<uint64_t> parse_grid(const std::string& text) {
  std::vector<uint64_t> grid;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    grid.push_back(std::stoull(text.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  if (grid.empty()) throw CLI::ValidationError("empty grid");
  return grid;
}

int selection_audit_exit(const Construction& st) {
  const CheckResult sel = check_selection(st);
  if (!sel.pass) {
    std::fprintf(stderr, "selection audit failed:\n");
    for (const std::string& w : sel.witnesses)
      std::fprintf(stderr, "  %s\n", w.c_str());
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"randomized staged additive-basis construction lab"};
  app.require_subcommand(1);

  // ---- construct ----
  CommonOpts c_opts;
  std::string c_out;
  auto* c_cmd = app.add_subcommand("construct", "run the staged construction");
  add_construct_opts(c_cmd, c_opts);
  c_cmd->add_option("--out", c_out, "report path (JSON)")->required();

  // ---- verify ----
  CommonOpts v_opts;
  std::string v_in, v_out, v_checks, v_inject;
  auto* v_cmd = app.add_subcommand("verify", "run verification checks");
  add_construct_opts(v_cmd, v_opts);
  v_cmd->add_option("--in", v_in, "existing construct report to verify");
  v_cmd->add_option("--out", v_out, "where to write the verified report");
  v_cmd->add_option("--checks", v_checks,
                    "comma-separated subset of: structure,coverage,"
                    "boundary,containments,basiswindow,deletion,"
                    "minimalwitness,selection");
  v_cmd->add_option("--inject", v_inject,
                    "fault-injection hook: corrupt the named check's "
                    "invariant before verifying (testing aid)");

  // ---- simulate ----
  std::string s_lemma = "sum", s_grid_text, s_csv, s_json;
  uint32_t s_trials = 200, s_reps = 3;
  uint64_t s_seed = 7;
  auto* s_cmd = app.add_subcommand("simulate", "Monte Carlo lemma trials");
  s_cmd->add_option("--lemma", s_lemma, "sum | intersection")
      ->check(CLI::IsMember({"sum", "intersection"}));
  s_cmd->add_option("--grid", s_grid_text, "comma-separated sizes")
      ->required();
  s_cmd->add_option("--trials", s_trials, "trials per grid point")
      ->default_val(200);
  s_cmd->add_option("--reps", s_reps, "repetitions (sum lemma)")
      ->default_val(3);
  s_cmd->add_option("--seed", s_seed, "simulation seed")->default_val(7);
  s_cmd->add_option("--csv", s_csv, "CSV output path")->required();
  s_cmd->add_option("--json", s_json, "JSON summary path");

  // ---- profile ----
  uint32_t p_k = 8, p_seeds = 300, p_points = 200;
  uint64_t p_seed = 7;
  std::string p_case = "TTF", p_csv, p_json;
  auto* p_cmd =
      app.add_subcommand("profile", "membership-probability profile");
  p_cmd->add_option("--k", p_k, "stage to profile")->default_val(8);
  p_cmd->add_option("--seeds", p_seeds, "number of seeds")->default_val(300);
  p_cmd->add_option("--points", p_points, "sampled plateau points")
      ->default_val(200);
  p_cmd->add_option("--seed", p_seed, "profile master seed")->default_val(7);
  p_cmd->add_option("--case", p_case, "construction case")->default_val("TTF");
  p_cmd->add_option("--csv", p_csv, "CSV output path")->required();
  p_cmd->add_option("--json", p_json, "JSON summary path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_cmd->parsed()) {
      finish_opts(c_opts);
      const auto t0 = std::chrono::steady_clock::now();
      const Construction st = run_construction(c_opts.cfg);
      write_file(c_out, json_text(run_report(st)));
      const double ms = std::chrono::duration<double, std::milli>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
      std::fprintf(stderr, "constructed %s in %.0f ms -> %s\n",
                   st.cfg.spec.name().c_str(), ms, c_out.c_str());
      return selection_audit_exit(st);
    }

    if (v_cmd->parsed()) {
      RunConfig cfg;
      nlohmann::ordered_json base_report;
      if (!v_in.empty()) {
        std::ifstream f(v_in);
        if (!f) {
          std::fprintf(stderr, "cannot read %s\n", v_in.c_str());
          return 2;
        }
        nlohmann::ordered_json doc;
        try {
          f >> doc;
          if (doc.at("schema_version").get<int>() != kSchemaVersion)
            throw std::runtime_error("unsupported schema_version");
          cfg = config_from_json(doc.at("config"));
        } catch (const std::exception& e) {
          std::fprintf(stderr, "corrupt report: %s\n", e.what());
          return 2;
        }
      } else {
        finish_opts(v_opts);
        cfg = v_opts.cfg;
      }
      std::vector<std::string> checks;
      if (!v_checks.empty()) {
        size_t pos = 0;
        while (pos < v_checks.size()) {
          size_t comma = v_checks.find(',', pos);
          if (comma == std::string::npos) comma = v_checks.size();
          const std::string name = v_checks.substr(pos, comma - pos);
          if (std::find(kAllCheckNames.begin(), kAllCheckNames.end(), name) ==
              kAllCheckNames.end()) {
            std::fprintf(stderr, "unknown check: %s\n", name.c_str());
            return 2;
          }
          checks.push_back(name);
          pos = comma + 1;
        }
      }
      Construction st = run_construction(cfg);
      if (!v_inject.empty()) apply_injection(st, v_inject);
      const std::vector<CheckResult> results = run_checks(st, checks);
      nlohmann::ordered_json report = run_report(st);
      nlohmann::ordered_json arr = nlohmann::ordered_json::array();
      bool all_pass = true;
      for (const CheckResult& r : results) {
        arr.push_back(r.to_json());
        std::fprintf(stderr, "[%s] %s (%s)\n",
                     r.pass ? (r.inconclusive ? "....." : " ok  ") : "FAIL ",
                     r.name.c_str(), r.window.c_str());
        if (!r.pass) {
          all_pass = false;
          for (const std::string& w : r.witnesses)
            std::fprintf(stderr, "    %s\n", w.c_str());
        }
      }
      report["checks"] = arr;
      const std::string out_path =
          !v_out.empty() ? v_out : (!v_in.empty() ? v_in : "");
      if (!out_path.empty()) write_file(out_path, json_text(report));
      return all_pass ? 0 : 1;
    }

    if (s_cmd->parsed()) {
      const std::vector<uint64_t> grid = parse_grid(s_grid_text);
      if (s_lemma == "sum") {
        const auto rows = sim_sum(grid, s_trials, s_reps, s_seed);
        write_file(s_csv, sum_rows_csv(rows));
        if (!s_json.empty())
          write_file(s_json, json_text(sum_summary(rows, s_seed)));
      } else {
        const auto rows = sim_intersection(grid, s_trials, s_seed);
        write_file(s_csv, intersection_rows_csv(rows));
        if (!s_json.empty())
          write_file(s_json, json_text(intersection_summary(rows, s_seed)));
      }
      return 0;
    }

    if (p_cmd->parsed()) {
      const CaseSpec spec = CaseSpec::from_name(p_case);
      const ProfileResult res =
          profile_membership(spec, p_k, p_seeds, p_points, p_seed);
      write_file(p_csv, profile_csv(res));
      if (!p_json.empty())
        write_file(p_json,
                   json_text(profile_summary(res, p_k, p_seeds, p_seed)));
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const HypothesisViolation& e) {
    std::fprintf(stderr, "hypothesis violation: %s\n", e.what());
    return 1;
  } catch (const SelectionExhausted& e) {
    std::fprintf(stderr, "selection failure: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
