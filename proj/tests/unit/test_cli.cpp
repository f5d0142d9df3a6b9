#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "issp/harness.hpp"

using namespace issp;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path dir() {
  static const auto d = [] {
    auto p = std::filesystem::temp_directory_path() / "issp_test_cli";
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
  }();
  return d;
}

std::string file(const char* name) { return (dir() / name).string(); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t lines(const std::string& path) {
  std::ifstream in(path);
  std::size_t count = 0;
  std::string line;
  while (std::getline(in, line)) {
    count += !line.empty() && line[0] != '#';
  }
  return count;
}

}  // namespace

TEST_CASE("gen writes the requested points and a manifest") {
  auto r = run_cli({"gen", "--front", "linear", "--n", "1000", "--d", "4", "--seed", "1", "-o",
                    file("pf.txt")});
  REQUIRE(r.code == 0);
  CHECK(lines(file("pf.txt")) == 1000);
  const auto first = slurp(file("pf.txt"));
  const auto manifest = nlohmann::json::parse(slurp(file("pf.txt") + ".manifest.json"));
  CHECK(manifest["n"] == 1000);
  CHECK(manifest["content_hash"].get<std::string>().size() == 16);
  r = run_cli({"gen", "--front", "linear", "--n", "1000", "--d", "4", "--seed", "1", "-o",
               file("pf.txt")});
  REQUIRE(r.code == 0);
  CHECK(slurp(file("pf.txt")) == first);

  r = run_cli({"gen", "--front", "dtlz7", "--m-per-axis", "13", "--d", "4", "-o", file("d7.txt")});
  REQUIRE(r.code == 0);
  CHECK(lines(file("d7.txt")) == 2197);

  r = run_cli({"gen", "--front", "concave", "--n", "91", "--d", "3", "--reference", "-o",
               file("z.txt")});
  CHECK(r.code == 0);
  CHECK(lines(file("z.txt")) == 91);
  r = run_cli({"gen", "--weights-only", "--n", "50", "--d", "3", "-o", file("w.txt")});
  CHECK(r.code == 0);
  CHECK(lines(file("w.txt")) == 50);
}

TEST_CASE("run, analyze and plot") {
  REQUIRE(run_cli({"gen", "--front", "linear", "--n", "150", "--d", "3", "-o", file("p.txt")})
              .code == 0);
  auto r = run_cli({"run", "--points", file("p.txt"), "--front", "linear", "--method", "ls-rn",
                    "--indicator", "hv", "--k", "10", "--lr", "20", "--ln", "20", "--trials", "31",
                    "--jobs", "4", "-o", file("res.csv")});
  REQUIRE(r.code == 0);
  auto recs = read_results_csv(file("res.csv"));
  CHECK(recs.size() == 31);
  CHECK(recs[0].l_random == 20);

  // Rerunning rewrites the same file.
  const auto before = read_results_csv(file("res.csv"));
  REQUIRE(run_cli({"run", "--points", file("p.txt"), "--front", "linear", "--method", "ls-rn",
                   "--indicator", "hv", "--k", "10", "--lr", "20", "--ln", "20", "--trials", "31",
                   "-o", file("res.csv")})
              .code == 0);
  const auto after = read_results_csv(file("res.csv"));
  REQUIRE(after.size() == before.size());
  for (std::size_t i = 0; i < after.size(); ++i) {
    CHECK(after[i].raw_value == before[i].raw_value);
    CHECK(after[i].evaluations == before[i].evaluations);
  }

  r = run_cli({"run", "--points", file("p.txt"), "--front", "linear", "--method", "gs",
               "--indicator", "hv", "--k", "10", "--trials", "31", "--append", "-o",
               file("res.csv")});
  REQUIRE(r.code == 0);
  CHECK(r.err.find("1 trial") != std::string::npos);
  CHECK(read_results_csv(file("res.csv")).size() == 32);

  r = run_cli({"run", "--points", file("p.txt"), "--front", "linear", "--method", "ls",
               "--indicator", "hv", "--k", "10", "--trials", "5", "--append", "--trace",
               file("traces"), "-o", file("res.csv")});
  REQUIRE(r.code == 0);

  r = run_cli({"analyze", "--results", file("res.csv"), "--baseline", "LS", "-o", file("sum.csv")});
  REQUIRE(r.code == 0);
  const auto rows = read_summary_csv(file("sum.csv"));
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].method == "LS");
  CHECK(rows[0].rel_error_pct == 0.0);

  r = run_cli({"analyze", "--trace", file("traces"), "-o", file("traces.csv")});
  REQUIRE(r.code == 0);
  CHECK(slurp(file("traces.csv")).rfind("trace,evaluations,successes,head_max_dist,tail_max_dist",
                                        0) == 0);
  CHECK(lines(file("traces.csv")) == 6);

  std::vector<std::string> plot{"plot", "--summary", file("sum.csv"), "--log-y", "-o",
                                file("figs")};
  for (const auto& entry : std::filesystem::directory_iterator(dir() / "traces")) {
    plot.push_back("--trace");
    plot.push_back(entry.path().string());
  }
  r = run_cli(plot);
  REQUIRE(r.code == 0);
  std::size_t svgs = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir() / "figs")) {
    svgs += entry.path().extension() == ".svg";
  }
  CHECK(svgs == 6);
}

TEST_CASE("reference-based indicators from the command line") {
  REQUIRE(run_cli({"gen", "--front", "convex", "--n", "120", "--d", "3", "-o", file("c.txt")})
              .code == 0);
  for (const char* ind : {"igd", "igdp", "eps", "r2", "nr2", "senergy"}) {
    CAPTURE(ind);
    const auto r = run_cli({"run", "--points", file("c.txt"), "--front", "convex", "--method",
                            "ls-n", "--indicator", ind, "--k", "8", "--ln", "10", "--trials", "2",
                            "-o", file("ind.csv")});
    CHECK(r.code == 0);
  }
  // Without a front there is nothing to derive Z from.
  auto r = run_cli({"run", "--points", file("c.txt"), "--method", "ls", "--indicator", "igd",
                    "--k", "8", "--trials", "1", "-o", file("ind.csv")});
  CHECK(r.code == 2);
  r = run_cli({"run", "--points", file("c.txt"), "--method", "ls", "--indicator", "igd", "--k",
               "8", "--trials", "1", "--ref-set", file("c.txt"), "-o", file("ind.csv")});
  CHECK(r.code == 0);
}

TEST_CASE("sweep fans out over a grid") {
  const auto r = run_cli({"sweep", "--d", "3", "--ns", "60,80", "--methods", "ls,ls-n,gs-l",
                          "--indicators", "hv,igd", "--k", "5", "--ln", "10", "--trials", "2",
                          "--jobs", "3", "-o", file("sweep.csv")});
  REQUIRE(r.code == 0);
  CHECK(read_results_csv(file("sweep.csv")).size() == 2 * 2 * (2 + 2 + 1));
}

TEST_CASE("exit codes") {
  CHECK(run_cli({"--help"}).code == 0);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"run", "--method", "sa", "--indicator", "hv", "-o", file("x.csv")}).code == 2);
  CHECK(run_cli({"run", "--method", "ls", "--indicator", "hv", "-o", file("x.csv")}).code == 2);
  const auto missing = run_cli({"run", "--points", file("absent.txt"), "--method", "ls",
                                "--indicator", "hv", "-o", file("x.csv")});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("absent.txt") != std::string::npos);
  {
    std::ofstream empty(file("empty.csv"));
  }
  CHECK(run_cli({"analyze", "--results", file("empty.csv"), "-o", file("s.csv")}).code == 1);
  CHECK(run_cli({"plot", "-o", file("figs2")}).code == 2);
}
