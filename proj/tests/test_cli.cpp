#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(QGRAPH_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path write_graph(const std::string& name, const std::string& text) {
  fs::path dir = fs::path(QGRAPH_TEST_DATA_DIR);
  fs::create_directories(dir);
  fs::path p = dir / name;
  std::ofstream(p) << text;
  return p;
}

const char* kInterval =
    R"({"vertices":[{"id":0},{"id":1}],"edges":[{"source":0,"target":1,"length":1.0}]})";

}  // namespace

TEST_CASE("solve reports the interval spectrum") {
  fs::path p = write_graph("interval.json", kInterval);
  RunResult r = run_cli("solve --graph " + p.string() + " --mu-max 50");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["eigenvalues"].size() == 3);
  CHECK(j["eigenvalues"][0]["mu"].get<double>() == 0.0);
  CHECK(j["eigenvalues"][1]["mu"].get<double>() == doctest::Approx(9.8696044).epsilon(1e-7));
  CHECK(j["graph"]["n_edges"] == 1);
  CHECK(j["graph"]["is_tree"] == true);

  RunResult csv = run_cli("solve --graph " + p.string() + " --mu-max 50 --csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.out.rfind("index,mu,k,multiplicity\n", 0) == 0);
  RunResult csv2 = run_cli("solve --graph " + p.string() + " --mu-max 50 --csv");
  CHECK(csv.out == csv2.out);  // byte-identical reports
}

TEST_CASE("solve with extrema report") {
  fs::path p = write_graph("interval2.json", kInterval);
  RunResult r = run_cli("solve --graph " + p.string() + " --mu-max 50 --extrema 2");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["extrema_index"] == 2);
  CHECK(j["extrema"]["max_points"].size() == 1);
  CHECK(j["extrema"]["boundary_margin"].get<double>() == 0.0);
  CHECK(j["nodal"]["domain_count"] == 2);

  RunResult bad = run_cli("solve --graph " + p.string() + " --mu-max 50 --extrema 99");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("solve error paths exit with 2") {
  CHECK(run_cli("solve --graph /definitely/missing.json --mu-max 10").exit_code == 2);
  fs::path bad = write_graph("bad.json", "{ not json");
  CHECK(run_cli("solve --graph " + bad.string() + " --mu-max 10").exit_code == 2);
  fs::path disc = write_graph("disconnected.json",
                              R"({"vertices":[{"id":0},{"id":1},{"id":2}],
              "edges":[{"source":0,"target":1,"length":1.0}]})");
  CHECK(run_cli("solve --graph " + disc.string() + " --mu-max 10").exit_code == 2);
  CHECK(run_cli("solve --graph " + disc.string()).exit_code == 2);  // mu-max has a default; graph must parse
}

TEST_CASE("repro exit codes track the claims") {
  RunResult ok = run_cli("repro");
  CHECK(ok.exit_code == 0);
  auto j = nlohmann::json::parse(ok.out);
  CHECK(j["epsilon"] == 0.05);
  CHECK(j["all_pass"] == true);

  CHECK(run_cli("repro --epsilon 0.1").exit_code == 0);
  CHECK(run_cli("repro --epsilon 0.2").exit_code == 1);
  CHECK(run_cli("repro --epsilon 0.5").exit_code == 2);
}

TEST_CASE("survey smoke, determinism, and csv") {
  RunResult a = run_cli("survey --n 6 --seed 31 --max-edges 8 --fixture");
  CHECK(a.exit_code == 0);
  auto j = nlohmann::json::parse(a.out);
  CHECK(j["records"].size() == 7);
  CHECK(j["summary"]["all_pass"] == true);

  RunResult b = run_cli("survey --n 6 --seed 31 --max-edges 8 --fixture");
  CHECK(a.out == b.out);

  RunResult c = run_cli("survey --n 6 --seed 31 --max-edges 8 --fixture --csv");
  CHECK(c.exit_code == 0);
  CHECK(c.out.rfind("seed,", 0) == 0);
}

TEST_CASE("monotonicity subcommand") {
  fs::path p = write_graph("interval3.json", kInterval);
  RunResult r = run_cli("monotonicity --graph " + p.string() + " --vertex 1 --length 0.5");
  CHECK(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["decreased"] == true);
  CHECK(j["weak_ok"] == true);
  CHECK(run_cli("monotonicity --graph " + p.string() + " --vertex 9 --length 0.5").exit_code == 2);
  CHECK(run_cli("monotonicity --graph " + p.string() + " --vertex 1 --length -2").exit_code == 2);
}

TEST_CASE("usage errors and help") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("solve").exit_code == 2);           // missing --graph
  CHECK(run_cli("repro --epsilon notanumber").exit_code == 2);
  CHECK(run_cli("--version").exit_code == 0);
}
