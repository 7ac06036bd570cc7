// End-to-end tests of the command-line tool: flags, exit codes, and
// byte-identical reruns. Driven through std::system against the built binary
// (paths arrive via ADDBASIS_CLI / ADDBASIS_TMP).
#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string cli() {
  const char* p = std::getenv("ADDBASIS_CLI");
  REQUIRE(p != nullptr);
  return p;
}

std::string tmpdir() {
  const char* p = std::getenv("ADDBASIS_TMP");
  REQUIRE(p != nullptr);
  std::filesystem::create_directories(p);
  return p;
}

int run(const std::string& args) {
  const std::string cmd = cli() + " " + args + " 2>/dev/null";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("construct: reruns are byte-identical, stages recorded") {
  const std::string d = tmpdir();
  const std::string r1 = d + "/c1.json", r2 = d + "/c2.json";
  CHECK(run("construct --case TTF --kmax 6 --seed 42 --out " + r1) == 0);
  CHECK(run("construct --case TTF --kmax 6 --seed 42 --out " + r2) == 0);
  const std::string t1 = slurp(r1);
  CHECK(t1 == slurp(r2));
  CHECK(t1.find("\"schema_version\"") != std::string::npos);
  // six stage entries
  size_t stages = 0, pos = 0;
  while ((pos = t1.find("\"N\":", pos)) != std::string::npos) {
    ++stages;
    ++pos;
  }
  CHECK(stages == 6);
}

TEST_CASE("construct: flag conflicts and bad cases exit 2") {
  const std::string d = tmpdir();
  CHECK(run("construct --case XYZ --out " + d + "/x.json") == 2);
  CHECK(run("construct --case TTF --p1 --out " + d + "/x.json") == 2);
  CHECK(run("construct --case TTF --alpha nonsense --out " + d + "/x.json") ==
        2);
  CHECK(run("badsubcommand") == 2);
}

TEST_CASE("verify: clean run exits 0 and appends checks") {
  const std::string d = tmpdir();
  const std::string rep = d + "/v.json";
  CHECK(run("construct --case FTT --kmax 6 --seed 42 --out " + rep) == 0);
  CHECK(run("verify --in " + rep) == 0);
  const std::string t = slurp(rep);
  CHECK(t.find("\"checks\"") != std::string::npos);
  CHECK(t.find("\"structure\"") != std::string::npos);
  // verifying again produces identical bytes
  const std::string before = t;
  CHECK(run("verify --in " + rep) == 0);
  CHECK(slurp(rep) == before);
}

TEST_CASE("verify: inline flags work without a report") {
  CHECK(run("verify --case TTF --kmax 5 --seed 42 --checks structure,"
            "selection") == 0);
}

TEST_CASE("verify: unknown check name exits 2") {
  CHECK(run("verify --case TTF --kmax 5 --checks bogus") == 2);
}

TEST_CASE("verify: missing or corrupt reports exit 2") {
  CHECK(run("verify --in /nonexistent/path.json") == 2);
  const std::string d = tmpdir();
  std::ofstream(d + "/garbage.json") << "{not json";
  CHECK(run("verify --in " + d + "/garbage.json") == 2);
  std::ofstream(d + "/schema.json") << "{\"schema_version\": 99}";
  CHECK(run("verify --in " + d + "/schema.json") == 2);
}

TEST_CASE("verify: injected faults exit 1") {
  CHECK(run("verify --case TTF --kmax 6 --seed 42 --inject structure "
            "--checks structure") == 1);
  CHECK(run("verify --case TTF --kmax 6 --seed 42 --inject boundary "
            "--checks boundary") == 1);
}

TEST_CASE("simulate: row counts and determinism") {
  const std::string d = tmpdir();
  const std::string c1 = d + "/s1.csv", c2 = d + "/s2.csv";
  CHECK(run("simulate --lemma sum --grid 250,400 --trials 6 --reps 2 "
            "--seed 7 --csv " + c1 + " --json " + d + "/s1.json") == 0);
  CHECK(run("simulate --lemma sum --grid 250,400 --trials 6 --reps 2 "
            "--seed 7 --csv " + c2) == 0);
  const std::string t = slurp(c1);
  CHECK(t == slurp(c2));
  // header + 2 grid points x 2 reps
  CHECK(std::count(t.begin(), t.end(), '\n') == 5);
  CHECK(t.rfind("lemma,m,rep,trials,failures", 0) == 0);
  CHECK(run("simulate --lemma sum --grid '' --trials 5 --csv " + c1) != 0);
}

TEST_CASE("simulate: intersection lemma") {
  const std::string d = tmpdir();
  const std::string c = d + "/si.csv";
  CHECK(run("simulate --lemma intersection --grid 65536 --trials 4 --seed 7 "
            "--csv " + c + " --json " + d + "/si.json") == 0);
  const std::string t = slurp(c);
  CHECK(std::count(t.begin(), t.end(), '\n') == 4);  // header + 3 intervals
  const std::string j = slurp(d + "/si.json");
  CHECK(j.find("\"any_failures\": false") != std::string::npos);
}

TEST_CASE("profile: deterministic CSV with oracle column") {
  const std::string d = tmpdir();
  const std::string c1 = d + "/p1.csv", c2 = d + "/p2.csv";
  CHECK(run("profile --k 5 --seeds 24 --points 30 --seed 7 --csv " + c1 +
            " --json " + d + "/p1.json") == 0);
  CHECK(run("profile --k 5 --seeds 24 --points 30 --seed 7 --csv " + c2) ==
        0);
  const std::string t = slurp(c1);
  CHECK(t == slurp(c2));
  CHECK(t.rfind("n,hits,seeds,empirical,exact_num,exact_den", 0) == 0);
  const std::string j = slurp(d + "/p1.json");
  CHECK(j.find("\"plateau_ordering_ok\": true") != std::string::npos);
}
