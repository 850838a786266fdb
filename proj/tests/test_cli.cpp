// End-to-end checks of the command-line tool. The binary path arrives as
// argv[1] from CTest.
#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

std::string g_binary;
std::string g_workdir;

std::string path_in_workdir(const std::string& name) { return g_workdir + "/" + name; }

int run(const std::string& args) {
  const std::string command = g_binary + " " + args;
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE(out);
  out << text;
}

std::string strip_runtime_column(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    out += line.substr(0, line.rfind(','));
    out += '\n';
  }
  return out;
}

}  // namespace

TEST_CASE("generate, place, validate pipeline") {
  spit(path_in_workdir("scen.cfg"),
       "grid_side = 4\ncbs_count = 6\ndemand = 1.25\nhotspot_fraction = 0.5\nseed = 11\n");

  CHECK(run("generate --config " + path_in_workdir("scen.cfg") + " --out " +
            path_in_workdir("scen.txt") + " > /dev/null 2>&1") == 0);
  CHECK(run("place --scenario " + path_in_workdir("scen.txt") + " --out " +
            path_in_workdir("placements.txt") + " 2> /dev/null") == 0);
  CHECK(run("validate --scenario " + path_in_workdir("scen.txt") + " --placements " +
            path_in_workdir("placements.txt") + " > " + path_in_workdir("validate.out") +
            " 2> /dev/null") == 0);
  CHECK(slurp(path_in_workdir("validate.out")).rfind("PASS", 0) == 0);

  // determinism: a second place run writes identical bytes
  CHECK(run("place --scenario " + path_in_workdir("scen.txt") + " --out " +
            path_in_workdir("placements2.txt") + " 2> /dev/null") == 0);
  CHECK(slurp(path_in_workdir("placements.txt")) == slurp(path_in_workdir("placements2.txt")));

  // seed override changes the scenario
  CHECK(run("generate --config " + path_in_workdir("scen.cfg") + " --seed 12 --out " +
            path_in_workdir("scen12.txt") + " > /dev/null 2>&1") == 0);
  CHECK(slurp(path_in_workdir("scen.txt")) != slurp(path_in_workdir("scen12.txt")));
}

TEST_CASE("oracle-check confirms heuristic placements on a tiny scenario") {
  spit(path_in_workdir("tiny.cfg"),
       "grid_side = 2\ncbs_count = 3\ndemand = 1.25\nK = 2\nseed = 4\n");
  CHECK(run("generate --config " + path_in_workdir("tiny.cfg") + " --out " +
            path_in_workdir("tiny.txt") + " > /dev/null 2>&1") == 0);
  CHECK(run("oracle-check --scenario " + path_in_workdir("tiny.txt") + " > " +
            path_in_workdir("oracle.out") + " 2> /dev/null") == 0);
  const std::string report = slurp(path_in_workdir("oracle.out"));
  CHECK(report.find("PASS: 0 violations") != std::string::npos);
}

TEST_CASE("sweep runs are reproducible modulo the wall-clock column") {
  spit(path_in_workdir("exp.cfg"),
       "grid_side = 4\n"
       "cbs_counts = 4, 8\n"
       "demands = 1.25\n"
       "hotspot_fractions = 0.5\n"
       "variants = prioritized, unprioritized\n"
       "replications = 2\n"
       "base_seed = 5\n"
       "output = " + path_in_workdir("sweep1.csv") + "\n");

  CHECK(run("sweep --config " + path_in_workdir("exp.cfg") + " 2> /dev/null") == 0);
  CHECK(run("sweep --config " + path_in_workdir("exp.cfg") + " --out " +
            path_in_workdir("sweep2.csv") + " --jobs 3 2> /dev/null") == 0);
  CHECK(strip_runtime_column(slurp(path_in_workdir("sweep1.csv"))) ==
        strip_runtime_column(slurp(path_in_workdir("sweep2.csv"))));
  CHECK(slurp(path_in_workdir("sweep1.csv.meta")).find("base_seed = 5") != std::string::npos);
}

TEST_CASE("strict mode and error exit codes") {
  // saturated instance: K=1 and two full-capacity CBSs on a 2x1... use a
  // 2x2 grid with demand 2.5 and many CBSs to force infeasibility
  spit(path_in_workdir("full.cfg"),
       "grid_side = 2\ncbs_count = 40\ndemand = 2.5\nK = 1\nseed = 2\n");
  CHECK(run("generate --config " + path_in_workdir("full.cfg") + " --out " +
            path_in_workdir("full.txt") + " > /dev/null 2>&1") == 0);
  CHECK(run("place --scenario " + path_in_workdir("full.txt") + " --strict > /dev/null 2>&1") ==
        1);
  CHECK(run("place --scenario " + path_in_workdir("full.txt") + " > /dev/null 2>&1") == 0);

  CHECK(run("place --scenario " + path_in_workdir("does_not_exist.txt") +
            " > /dev/null 2>&1") == 2);
  CHECK(run("place --bogus-flag > /dev/null 2>&1") == 2);
  CHECK(run("sweep --config " + path_in_workdir("exp.cfg") + " --out /nonexistent-dir/x.csv" +
            " > /dev/null 2>&1") == 2);
}

TEST_CASE("static_backhaul place variant emits the oversubscription report") {
  spit(path_in_workdir("sb.cfg"),
       "grid_side = 3\ncbs_count = 6\ndemand = 1.25\nhotspot_fraction = 0\nseed = 21\n");
  CHECK(run("generate --config " + path_in_workdir("sb.cfg") + " --out " +
            path_in_workdir("sb.txt") + " > /dev/null 2>&1") == 0);
  CHECK(run("place --scenario " + path_in_workdir("sb.txt") +
            " --variant static_backhaul --out " + path_in_workdir("report.csv") +
            " 2> /dev/null") == 0);
  const std::string report = slurp(path_in_workdir("report.csv"));
  CHECK(report.rfind("link_u,link_v,wavelength,offered_gbps,capacity_gbps,excess_gbps", 0) == 0);
  CHECK(report.find("cbs_id,delivered_fraction") != std::string::npos);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <backhaul-binary> [workdir]\n");
    return 2;
  }
  g_binary = argv[1];
  g_workdir = argc >= 3 ? argv[2] : ".";

  doctest::Context context;
  context.applyCommandLine(1, argv);
  return context.run();
}
