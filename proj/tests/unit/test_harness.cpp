#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "issp/harness.hpp"
#include "oracles.hpp"

using namespace issp;

namespace {

// Two-sided exact rank-sum p-value by enumerating every assignment of the
// pooled midranks to the first sample.
double exact_rank_sum(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n = pooled.size();
  std::vector<double> rank(n);
  for (std::size_t i = 0; i < n; ++i) {
    double less = 0.0;
    double equal = 0.0;
    for (double v : pooled) {
      less += v < pooled[i];
      equal += v == pooled[i];
    }
    rank[i] = less + (equal + 1.0) / 2.0;
  }
  double observed = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    observed += rank[i];
  }
  const double center = a.size() * (n + 1.0) / 2.0;
  double extreme = 0.0;
  double all = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != a.size()) {
      continue;
    }
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) {
        s += rank[i];
      }
    }
    all += 1.0;
    extreme += std::abs(s - center) >= std::abs(observed - center) - 1e-9;
  }
  return extreme / all;
}

RunRecord record(const std::string& method, double raw, std::uint64_t evals = 100) {
  RunRecord r;
  r.method = method;
  r.indicator = "hv";
  r.front = "linear";
  r.n = 100;
  r.d = 3;
  r.k = 10;
  r.raw_value = raw;
  r.canonical_value = raw;
  r.evaluations = evals;
  r.wall_time_ms = 1.0;
  return r;
}

ExperimentConfig small_config(Method method) {
  ExperimentConfig cfg;
  cfg.instance.front = FrontKind::Linear;
  cfg.instance.n = 120;
  cfg.instance.d = 3;
  cfg.instance.seed = 1;
  cfg.method = method;
  cfg.k = 10;
  cfg.l_nearest = 10;
  cfg.l_random = 10;
  cfg.trials = 4;
  return cfg;
}

std::string without_wall_time(std::vector<RunRecord> records) {
  for (auto& r : records) {
    r.wall_time_ms = 0.0;
    r.listbuild_ms = 0.0;
  }
  std::ostringstream out;
  write_results_csv(out, records, true);
  return out.str();
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / "issp_test_harness";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("relative_error") {
  CHECK(relative_error(1.5, 1.5) == 0.0);
  CHECK(relative_error(1.374, 1.372) == doctest::Approx(0.1455604075691412).epsilon(1e-9));
  CHECK(std::abs(relative_error(1.374, 1.372) - 0.1456) < 1e-4);
  // Minimization indicators are compared on the negated scale.
  CHECK(relative_error(-0.10, -0.11) == doctest::Approx(10.0));
  CHECK_THROWS_AS(relative_error(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("wilcoxon exact examples") {
  CHECK(oracle::rel_close(exact_rank_sum({1, 2, 3}, {4, 5, 6}), 0.1, 1e-15));
  CHECK(wilcoxon_rank_sum({1, 2, 3}, {4, 5, 6}) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(wilcoxon_rank_sum({1, 2, 3}, {1, 2, 3}) == 1.0);
  CHECK(wilcoxon_verdict({1, 2, 3}, {1, 2, 3}) == '~');
}

TEST_CASE("wilcoxon exact mode matches enumeration, ties included") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> value(0, 6);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n1 = 3 + rng() % 7;
    const std::size_t n2 = 3 + rng() % (18 - n1);
    std::vector<double> a(n1);
    std::vector<double> b(n2);
    for (auto& v : a) {
      v = value(rng);
    }
    for (auto& v : b) {
      v = value(rng) + 1;
    }
    const double p = wilcoxon_rank_sum(a, b);
    CHECK(p == doctest::Approx(exact_rank_sum(a, b)).epsilon(1e-12));
    CHECK(p == doctest::Approx(wilcoxon_rank_sum(b, a)).epsilon(1e-12));
  }
}

TEST_CASE("wilcoxon normal approximation") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> noise(0.0, 0.01);
  std::vector<double> a(31);
  std::vector<double> b(31);
  for (auto& v : a) {
    v = 1.0 + noise(rng);
  }
  for (auto& v : b) {
    v = 2.0 + noise(rng);
  }
  CHECK(wilcoxon_rank_sum(a, b) < 0.05);
  CHECK(wilcoxon_rank_sum(a, b) == doctest::Approx(wilcoxon_rank_sum(b, a)));
  CHECK(wilcoxon_verdict(a, b) == '+');
  CHECK(wilcoxon_verdict(b, a) == '-');
  // Complete separation of 31 vs 31: z = (480.5 - 0.5) / sqrt(31 * 31 * 63 / 12).
  const double z = 480.0 / std::sqrt(31.0 * 31.0 * 63.0 / 12.0);
  CHECK(wilcoxon_rank_sum(a, b) == doctest::Approx(std::erfc(z / std::sqrt(2.0))).epsilon(1e-12));
  std::vector<double> c(a);
  std::shuffle(c.begin(), c.end(), rng);
  CHECK(wilcoxon_rank_sum(a, c) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("summarize_trace") {
  SwapTrace trace;
  for (std::uint64_t i = 1; i <= 100; ++i) {
    trace.push_back({i, 0.5, false, 0.0});
  }
  trace[2].success = true;
  trace[2].dist = 0.9;
  trace[95].success = true;
  trace[95].dist = 0.1;
  const auto s = summarize_trace(trace, 0.1, 0.1);
  CHECK(s.head_max_dist == 0.9);
  CHECK(s.tail_max_dist == 0.1);
  trace[95].success = false;
  const auto no_tail = summarize_trace(trace, 0.1, 0.1);
  CHECK_FALSE(no_tail.tail_max_dist.has_value());
  CHECK_FALSE(summarize_trace({}, 0.1, 0.1).head_max_dist.has_value());
  CHECK_THROWS_AS(summarize_trace(trace, 0.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(summarize_trace(trace, 0.1, 0.6), std::invalid_argument);
}

TEST_CASE("aggregate") {
  std::vector<RunRecord> base;
  std::vector<RunRecord> other;
  for (int i = 0; i < 5; ++i) {
    base.push_back(record("LS", 1.0 + 0.01 * i, 1000));
    other.push_back(record("LS-N", 0.9 + 0.01 * i, 100));
  }
  const auto self = aggregate(base, base);
  CHECK(self.rel_error_pct == 0.0);
  CHECK(self.verdict == '~');
  const auto row = aggregate(other, base);
  // Hand-computed: means 1.02 and 0.92, sample std sqrt(0.00025).
  CHECK(row.mean == doctest::Approx(0.92).epsilon(1e-12));
  CHECK(row.std == doctest::Approx(std::sqrt(0.00025)).epsilon(1e-12));
  CHECK(row.rel_error_pct == doctest::Approx(0.1 / 1.02 * 100.0).epsilon(1e-12));
  CHECK(row.verdict == '-');
  CHECK(row.mean_evaluations == 100.0);
  CHECK(row.method == "LS-N");

  std::vector<RunRecord> constant(31, record("LS", 1.25));
  CHECK(aggregate(constant, constant).std == 0.0);
  CHECK(verdict_text('~') == "≈");
  CHECK(verdict_text('+') == "+");
}

TEST_CASE("aggregate matches an independent recomputation") {
  std::mt19937_64 rng(29);
  std::normal_distribution<double> noise(1.0, 0.05);
  std::vector<RunRecord> recs;
  for (int i = 0; i < 31; ++i) {
    recs.push_back(record("LS-RN", noise(rng)));
  }
  double sum = 0.0;
  for (const auto& r : recs) {
    sum += r.raw_value;
  }
  const double mean = sum / 31.0;
  double ss = 0.0;
  for (const auto& r : recs) {
    ss += (r.raw_value - mean) * (r.raw_value - mean);
  }
  const auto row = aggregate(recs, recs);
  CHECK(oracle::rel_close(row.mean, mean, 1e-12));
  CHECK(oracle::rel_close(row.std, std::sqrt(ss / 30.0), 1e-12));
}

TEST_CASE("run_experiment produces seeded, counted, deterministic records") {
  auto cfg = small_config(Method::LSRN);
  cfg.trials = 31;
  const auto recs = run_experiment(cfg);
  REQUIRE(recs.size() == 31);
  std::set<std::uint64_t> seeds;
  for (std::size_t t = 0; t < recs.size(); ++t) {
    CHECK(recs[t].trial == t);
    CHECK(recs[t].seed == cfg.base_seed + t);
    seeds.insert(recs[t].seed);
    CHECK(recs[t].method == "LS-RN");
    CHECK(recs[t].canonical_value == recs[t].raw_value);
  }
  CHECK(seeds.size() == 31);
  cfg.jobs = 4;
  CHECK(without_wall_time(run_experiment(cfg)) == without_wall_time(recs));
}

TEST_CASE("record evaluations equal the search's own counter") {
  const auto cfg = small_config(Method::LSN);
  const auto pts = generate_instance(cfg.instance);
  const auto spec = IndicatorSpec::hypervolume(Point::filled(3, 1.1));
  const auto recs = run_experiment(cfg, pts, spec);
  const auto lists = build_nearest_list(pts, cfg.l_nearest);
  for (const auto& r : recs) {
    const auto out = local_search_cl(pts, cfg.k, spec, lists, r.seed);
    CHECK(r.evaluations == out.evaluations);
    CHECK(r.accepted_swaps == out.accepted_swaps);
    CHECK(r.raw_value == out.raw_value);
  }
}

TEST_CASE("greedy methods run once") {
  auto cfg = small_config(Method::GS);
  cfg.trials = 5;
  const auto recs = run_experiment(cfg);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].wall_time_ms > 0.0);
  CHECK(recs[0].evaluations <= cfg.k * cfg.instance.n);
  cfg.method = Method::GSL;
  const auto lazy = run_experiment(cfg);
  REQUIRE(lazy.size() == 1);
  CHECK(lazy[0].raw_value == recs[0].raw_value);
  CHECK(lazy[0].evaluations < recs[0].evaluations);
}

TEST_CASE("every method runs and trace files record every evaluation") {
  const auto dir = scratch_dir() / "traces";
  std::filesystem::remove_all(dir);
  for (auto method : kAllMethods) {
    auto cfg = small_config(method);
    cfg.trials = 2;
    cfg.trace_dir = dir;
    const auto recs = run_experiment(cfg);
    CHECK(recs.size() == (is_greedy(method) ? 1u : 2u));
    CHECK(parse_method(method_name(method)) == method);
  }
  std::size_t files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    const auto trace = read_trace_csv(entry.path());
    REQUIRE_FALSE(trace.empty());
    CHECK(trace.back().eval_index == trace.size());
    ++files;
  }
  CHECK(files == 8);
  CHECK(parse_method("ls-rn") == Method::LSRN);
  CHECK_THROWS_AS(parse_method("sa"), std::invalid_argument);
  std::filesystem::remove_all(dir);
}

TEST_CASE("run_experiment validates before running") {
  auto cfg = small_config(Method::LS);
  const auto pts = generate_instance(cfg.instance);
  cfg.k = 200;
  CHECK_THROWS_AS(run_experiment(cfg, pts, IndicatorSpec::hypervolume(Point::filled(3, 1.1))),
                  std::invalid_argument);
  cfg.k = 10;
  CHECK_THROWS_AS(run_experiment(cfg, pts, IndicatorSpec::hypervolume(Point::filled(2, 1.1))),
                  std::invalid_argument);
  cfg.method = Method::GSL;
  CHECK_THROWS_AS(run_experiment(cfg, pts, IndicatorSpec::s_energy()), std::invalid_argument);
}

TEST_CASE("CSV round trips") {
  const auto dir = scratch_dir();
  std::vector<RunRecord> recs{record("LS", 1.0 / 3.0), record("LS-N", 2.0 / 3.0)};
  recs[1].listbuild_ms = 2.5;
  write_results_csv(dir / "r.csv", recs);
  write_results_csv(dir / "r.csv", recs, true);
  const auto back = read_results_csv(dir / "r.csv");
  REQUIRE(back.size() == 4);
  CHECK(back[0].raw_value == recs[0].raw_value);
  CHECK(back[3].method == "LS-N");
  CHECK(back[3].listbuild_ms == 2.5);

  SwapTrace trace{{1, 0.25, false, 1.0}, {2, 0.125, true, 1.5}};
  write_trace_csv(dir / "t.csv", trace);
  const auto t = read_trace_csv(dir / "t.csv");
  REQUIRE(t.size() == 2);
  CHECK(t[1].success);
  CHECK(t[1].dist == 0.125);
  CHECK(t[1].canonical_after == 1.5);

  const auto row = aggregate({record("LS-N", 0.5)}, {record("LS", 1.0)});
  write_summary_csv(dir / "s.csv", {row});
  std::ifstream in(dir / "s.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("method,mean,std,rel_error_pct,wilcoxon_verdict", 0) == 0);
  const auto rows = read_summary_csv(dir / "s.csv");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].rel_error_pct == doctest::Approx(50.0));
  CHECK(rows[0].verdict == '~');
  {
    std::ofstream bad(dir / "bad.csv");
    bad << "method,indicator\nLS\n";
  }
  CHECK_THROWS(read_results_csv(dir / "bad.csv"));
  std::filesystem::remove_all(dir);
}

TEST_CASE("svg charts") {
  SwapTrace trace{{1, 0.5, true, 1.0}, {10, 0.2, false, 1.0}, {100, 0.1, true, 1.1}};
  const auto svg = render_svg(trace_chart(trace, "demo", true));
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("demo") != std::string::npos);

  std::vector<SummaryRow> rows;
  for (std::size_t n : {1000, 2000, 4000}) {
    for (const char* m : {"LS", "LS-N"}) {
      SummaryRow r;
      r.method = m;
      r.n = n;
      r.mean_evaluations = static_cast<double>(n) * (m[2] ? 1.0 : 10.0);
      r.mean_wall_ms = 1.0;
      rows.push_back(r);
    }
  }
  const auto chart = scaling_chart(rows, false, true);
  CHECK(chart.series.size() == 2);
  CHECK(chart.log_y);
  CHECK(render_svg(chart).find("LS-N") != std::string::npos);
}
