#include "issp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace issp {

namespace {

struct MethodEntry {
  Method method;
  std::string_view name;
  std::string_view flag;
};

constexpr MethodEntry kMethodNames[] = {
    {Method::LS, "LS", "ls"},       {Method::LSN, "LS-N", "ls-n"}, {Method::LSR, "LS-R", "ls-r"},
    {Method::LSRN, "LS-RN", "ls-rn"}, {Method::GS, "GS", "gs"},     {Method::GSL, "GS-L", "gs-l"}};

constexpr std::uint64_t kRandomListSeedOffset = 0x9E3779B97F4A7C15ULL;

const char* const kResultColumns[] = {
    "method",   "indicator", "front",     "n",        "d",               "k",
    "l_N",      "l_R",       "trial",     "seed",     "raw_value",       "canonical_value",
    "evaluations", "accepted_swaps", "wall_time_ms", "listbuild_ms"};

const char* const kSummaryColumns[] = {"method", "mean",  "std", "rel_error_pct",
                                       "wilcoxon_verdict", "indicator", "front", "n", "d", "k",
                                       "mean_evaluations", "mean_wall_ms"};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_ms(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    if (!field.empty() && field.back() == '\r') {
      field.pop_back();
    }
    out.push_back(field);
  }
  if (!line.empty() && line.back() == ',') {
    out.emplace_back();
  }
  return out;
}

// Header-indexed rows of a comma-separated file.
class CsvTable {
 public:
  explicit CsvTable(const std::filesystem::path& path) : path_(path) {
    std::ifstream in(path);
    if (!in) {
      throw std::runtime_error("cannot read '" + path.string() + "'");
    }
    std::string line;
    if (!std::getline(in, line)) {
      throw std::runtime_error("'" + path.string() + "' is empty");
    }
    header_ = split_csv_line(line);
    while (std::getline(in, line)) {
      if (line.empty() || line == "\r") {
        continue;
      }
      auto row = split_csv_line(line);
      if (row == header_) {
        continue;  // header repeated by an appending writer
      }
      if (row.size() != header_.size()) {
        throw std::runtime_error("ragged row in '" + path.string() + "'");
      }
      rows_.push_back(std::move(row));
    }
  }

  std::size_t column(const std::string& name) const {
    auto it = std::find(header_.begin(), header_.end(), name);
    if (it == header_.end()) {
      throw std::runtime_error("'" + path_.string() + "' lacks column '" + name + "'");
    }
    return static_cast<std::size_t>(it - header_.begin());
  }

  const std::vector<std::vector<std::string>>& rows() const { return rows_; }

  double number(const std::vector<std::string>& row, std::size_t col) const {
    try {
      std::size_t used = 0;
      const double v = std::stod(row[col], &used);
      if (used != row[col].size()) {
        throw std::invalid_argument("trailing characters");
      }
      return v;
    } catch (const std::exception&) {
      throw std::runtime_error("bad number '" + row[col] + "' in '" + path_.string() + "'");
    }
  }

  std::uint64_t integer(const std::vector<std::string>& row, std::size_t col) const {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(row[col], &used);
      if (used != row[col].size()) {
        throw std::invalid_argument("trailing characters");
      }
      return v;
    } catch (const std::exception&) {
      throw std::runtime_error("bad integer '" + row[col] + "' in '" + path_.string() + "'");
    }
  }

 private:
  std::filesystem::path path_;
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double sample_std(const std::vector<double>& v) {
  if (v.size() < 2) {
    return 0.0;
  }
  const double m = mean_of(v);
  double acc = 0.0;
  for (double x : v) {
    acc += (x - m) * (x - m);
  }
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

// Midranks (1-based) of the pooled sample.
std::vector<double> midranks(const std::vector<double>& pooled, double* tie_term) {
  const std::size_t n = pooled.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return pooled[a] < pooled[b]; });
  std::vector<double> ranks(n);
  double ties = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) {
      ++j;
    }
    const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
    for (std::size_t t = i; t <= j; ++t) {
      ranks[order[t]] = rank;
    }
    const double size = static_cast<double>(j - i + 1);
    ties += size * size * size - size;
    i = j + 1;
  }
  if (tie_term) {
    *tie_term = ties;
  }
  return ranks;
}

std::string trace_file_name(const ExperimentConfig& config, const std::string& front,
                            std::size_t n, std::size_t trial) {
  std::string name = "trace_" + std::string(method_name(config.method)) + "_" +
                     std::string(indicator_name(config.indicator)) + "_" + front + "_n" +
                     std::to_string(n) + "_t" + std::to_string(trial) + ".csv";
  return name;
}

}  // namespace

std::string_view method_name(Method method) noexcept {
  for (const auto& e : kMethodNames) {
    if (e.method == method) {
      return e.name;
    }
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  for (const auto& e : kMethodNames) {
    if (e.name == name || e.flag == name) {
      return e.method;
    }
  }
  throw std::invalid_argument("unknown method '" + std::string(name) + "'");
}

bool is_greedy(Method method) noexcept { return method == Method::GS || method == Method::GSL; }

std::vector<RunRecord> run_experiment(const ExperimentConfig& config, const PointSet& points,
                                      const IndicatorSpec& spec) {
  if (config.trials < 1) {
    throw std::invalid_argument("trials must be at least 1");
  }
  spec.validate(points.dim());
  if (spec.kind != config.indicator) {
    throw std::invalid_argument("indicator spec does not match the configured indicator");
  }
  const std::size_t n = points.size();
  const std::size_t k = config.k;
  if (k >= n || (!is_greedy(config.method) && k < 2) || k == 0) {
    throw std::invalid_argument("k = " + std::to_string(k) + " does not fit n = " +
                                std::to_string(n));
  }
  const bool uses_nearest = config.method == Method::LSN || config.method == Method::LSRN;
  const bool uses_random = config.method == Method::LSR || config.method == Method::LSRN;
  if (uses_nearest && (config.l_nearest < 1 || config.l_nearest > n - 1)) {
    throw std::invalid_argument("l_N must be in [1, n-1]");
  }
  if (uses_random && (config.l_random < 1 || config.l_random > n - 1)) {
    throw std::invalid_argument("l_R must be in [1, n-1]");
  }
  if (config.method == Method::GSL && spec.kind != IndicatorKind::HV &&
      spec.kind != IndicatorKind::IGD && spec.kind != IndicatorKind::IGDPlus) {
    throw std::invalid_argument("GS-L supports hv, igd and igdp only");
  }
  if (config.method == Method::GS && spec.kind == IndicatorKind::SEnergy) {
    throw std::invalid_argument("GS is undefined for s-energy on one point");
  }
  if (config.trace_dir) {
    std::filesystem::create_directories(*config.trace_dir);
  }

  const std::string front =
      config.front_label.empty() ? std::string(front_name(config.instance.front))
                                 : config.front_label;
  const std::size_t trials = is_greedy(config.method) ? 1 : config.trials;

  // The nearest list is the same for every trial of LS-N; build it once and
  // charge its construction time to every trial.
  std::optional<CandidateListSet> nearest;
  double nearest_ms = 0.0;
  if (config.method == Method::LSN) {
    const auto t0 = std::chrono::steady_clock::now();
    nearest = build_nearest_list(points, config.l_nearest);
    nearest_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  }

  std::vector<RunRecord> records(trials);
  auto run_trial = [&](std::size_t t) {
    const std::uint64_t seed = config.base_seed + t;
    SearchOptions options;
    options.trace = config.trace_dir.has_value() && !is_greedy(config.method);
    options.mode = config.mode;
    SearchOutcome out;
    switch (config.method) {
      case Method::LS:
        out = local_search(points, k, spec, seed, options);
        break;
      case Method::LSN:
        out = local_search_cl(points, k, spec, *nearest, seed, options);
        out.listbuild_ms = nearest_ms;
        out.wall_time_ms += nearest_ms;
        break;
      case Method::LSR:
        out = ls_rn(points, k, spec, config.l_random, 0, seed, options);
        break;
      case Method::LSRN:
        out = ls_rn(points, k, spec, config.l_random, config.l_nearest, seed, options);
        break;
      case Method::GS:
        out = greedy(points, k, spec);
        break;
      case Method::GSL:
        out = lazy_greedy(points, k, spec);
        break;
    }
    RunRecord& r = records[t];
    r.method = std::string(method_name(config.method));
    r.indicator = std::string(indicator_name(spec.kind));
    r.front = front;
    r.n = n;
    r.d = points.dim();
    r.k = k;
    r.l_nearest = uses_nearest ? config.l_nearest : 0;
    r.l_random = uses_random ? config.l_random : 0;
    r.trial = t;
    r.seed = seed;
    r.raw_value = out.raw_value;
    r.canonical_value = out.subset.cached_canonical;
    r.evaluations = out.evaluations;
    r.accepted_swaps = out.accepted_swaps;
    r.wall_time_ms = out.wall_time_ms;
    r.listbuild_ms = out.listbuild_ms;
    if (options.trace) {
      write_trace_csv(*config.trace_dir / trace_file_name(config, front, n, t), out.trace);
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min(config.jobs, trials));
  if (workers == 1) {
    for (std::size_t t = 0; t < trials; ++t) {
      run_trial(t);
    }
    return records;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t t = next++; t < trials; t = next++) {
        try {
          run_trial(t);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) {
            failure = std::current_exception();
          }
        }
      }
    });
  }
  for (auto& th : pool) {
    th.join();
  }
  if (failure) {
    std::rethrow_exception(failure);
  }
  return records;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
  const PointSet points = generate_instance(config.instance);
  ReferenceDefaults defaults;
  defaults.seed = config.instance.seed;
  const IndicatorSpec spec =
      default_spec(config.indicator, config.instance.front, config.instance.d, defaults);
  return run_experiment(config, points, spec);
}

double relative_error(double baseline_mean, double other_mean) {
  if (baseline_mean == 0.0) {
    throw std::invalid_argument("relative error against a zero baseline");
  }
  return (baseline_mean - other_mean) / std::abs(baseline_mean) * 100.0;
}

double wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("rank-sum test needs two nonempty samples");
  }
  std::vector<double> pooled(a);
  pooled.insert(pooled.end(), b.begin(), b.end());
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  const std::size_t total = n1 + n2;
  double tie_term = 0.0;
  const auto ranks = midranks(pooled, &tie_term);
  if (std::all_of(pooled.begin(), pooled.end(), [&](double v) { return v == pooled[0]; })) {
    return 1.0;
  }

  if (total <= 20) {
    // Doubled midranks are integers, so the null distribution of the doubled
    // rank sum of the first sample can be counted exactly.
    std::vector<int> doubled(total);
    int max_sum = 0;
    for (std::size_t i = 0; i < total; ++i) {
      doubled[i] = static_cast<int>(std::lround(2.0 * ranks[i]));
      max_sum += doubled[i];
    }
    // ways[j][s]: subsets of size j with doubled sum s.
    std::vector<std::vector<double>> ways(n1 + 1, std::vector<double>(max_sum + 1, 0.0));
    ways[0][0] = 1.0;
    for (std::size_t i = 0; i < total; ++i) {
      for (std::size_t j = std::min(i + 1, n1); j >= 1; --j) {
        for (int s = max_sum; s >= doubled[i]; --s) {
          ways[j][s] += ways[j - 1][s - doubled[i]];
        }
      }
    }
    int observed = 0;
    for (std::size_t i = 0; i < n1; ++i) {
      observed += doubled[i];
    }
    // The expected doubled rank sum n1 (N + 1) is an integer as well.
    const long center = static_cast<long>(n1) * static_cast<long>(total + 1);
    const long dev_obs = std::labs(observed - center);
    double extreme = 0.0;
    double all = 0.0;
    for (int s = 0; s <= max_sum; ++s) {
      all += ways[n1][s];
      if (std::labs(s - center) >= dev_obs) {
        extreme += ways[n1][s];
      }
    }
    return std::min(1.0, extreme / all);
  }

  double r1 = 0.0;
  for (std::size_t i = 0; i < n1; ++i) {
    r1 += ranks[i];
  }
  const double dn1 = static_cast<double>(n1);
  const double dn2 = static_cast<double>(n2);
  const double dn = static_cast<double>(total);
  const double u = r1 - dn1 * (dn1 + 1.0) / 2.0;
  const double mu = dn1 * dn2 / 2.0;
  const double var = dn1 * dn2 / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
  if (!(var > 0.0)) {
    return 1.0;
  }
  const double z = std::max(0.0, std::abs(u - mu) - 0.5) / std::sqrt(var);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

char wilcoxon_verdict(const std::vector<double>& baseline, const std::vector<double>& other,
                      double alpha) {
  const double p = wilcoxon_rank_sum(baseline, other);
  if (!(p < alpha)) {
    return '~';
  }
  std::vector<double> pooled(baseline);
  pooled.insert(pooled.end(), other.begin(), other.end());
  const auto ranks = midranks(pooled, nullptr);
  double base_sum = 0.0;
  for (std::size_t i = 0; i < baseline.size(); ++i) {
    base_sum += ranks[i];
  }
  const double other_sum = std::accumulate(ranks.begin(), ranks.end(), 0.0) - base_sum;
  const double base_mean = base_sum / static_cast<double>(baseline.size());
  const double other_mean = other_sum / static_cast<double>(other.size());
  return other_mean > base_mean ? '+' : '-';
}

TraceSummary summarize_trace(const SwapTrace& trace, double head_frac, double tail_frac) {
  if (!(head_frac > 0.0 && head_frac <= 0.5) || !(tail_frac > 0.0 && tail_frac <= 0.5)) {
    throw std::invalid_argument("trace window fractions must be in (0, 0.5]");
  }
  TraceSummary out;
  if (trace.empty()) {
    return out;
  }
  const auto total = static_cast<double>(trace.back().eval_index);
  const auto head_end = static_cast<std::uint64_t>(std::ceil(head_frac * total));
  const auto tail_len = static_cast<std::uint64_t>(std::ceil(tail_frac * total));
  const std::uint64_t tail_start = trace.back().eval_index - tail_len;  // exclusive
  for (const auto& row : trace) {
    if (!row.success) {
      continue;
    }
    if (row.eval_index <= head_end) {
      out.head_max_dist = std::max(out.head_max_dist.value_or(row.dist), row.dist);
    }
    if (row.eval_index > tail_start) {
      out.tail_max_dist = std::max(out.tail_max_dist.value_or(row.dist), row.dist);
    }
  }
  return out;
}

SummaryRow aggregate(const std::vector<RunRecord>& records, const std::vector<RunRecord>& baseline) {
  if (records.empty() || baseline.empty()) {
    throw std::invalid_argument("aggregate needs nonempty record lists");
  }
  std::vector<double> raw;
  std::vector<double> canon;
  std::vector<double> base_canon;
  double evals = 0.0;
  double wall = 0.0;
  for (const auto& r : records) {
    raw.push_back(r.raw_value);
    canon.push_back(r.canonical_value);
    evals += static_cast<double>(r.evaluations);
    wall += r.wall_time_ms;
  }
  for (const auto& r : baseline) {
    base_canon.push_back(r.canonical_value);
  }
  SummaryRow row;
  const auto& first = records.front();
  row.method = first.method;
  row.indicator = first.indicator;
  row.front = first.front;
  row.n = first.n;
  row.d = first.d;
  row.k = first.k;
  row.mean = mean_of(raw);
  row.std = sample_std(raw);
  row.rel_error_pct = relative_error(mean_of(base_canon), mean_of(canon));
  row.verdict = wilcoxon_verdict(base_canon, canon);
  row.mean_evaluations = evals / static_cast<double>(records.size());
  row.mean_wall_ms = wall / static_cast<double>(records.size());
  return row;
}

void write_results_csv(std::ostream& out, const std::vector<RunRecord>& records, bool header) {
  if (header) {
    for (std::size_t c = 0; c < std::size(kResultColumns); ++c) {
      out << (c ? "," : "") << kResultColumns[c];
    }
    out << '\n';
  }
  for (const auto& r : records) {
    out << r.method << ',' << r.indicator << ',' << r.front << ',' << r.n << ',' << r.d << ','
        << r.k << ',' << r.l_nearest << ',' << r.l_random << ',' << r.trial << ',' << r.seed
        << ',' << format_double(r.raw_value) << ',' << format_double(r.canonical_value) << ','
        << r.evaluations << ',' << r.accepted_swaps << ',' << format_ms(r.wall_time_ms) << ','
        << format_ms(r.listbuild_ms) << '\n';
  }
}

void write_results_csv(const std::filesystem::path& path, const std::vector<RunRecord>& records,
                       bool append) {
  const bool header = !append || !std::filesystem::exists(path) ||
                      std::filesystem::file_size(path) == 0;
  std::ofstream out(path, append ? std::ios::app : std::ios::trunc);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  write_results_csv(out, records, header);
}

std::vector<RunRecord> read_results_csv(const std::filesystem::path& path) {
  const CsvTable table(path);
  std::vector<std::size_t> col;
  for (const char* name : kResultColumns) {
    col.push_back(table.column(name));
  }
  std::vector<RunRecord> out;
  for (const auto& row : table.rows()) {
    RunRecord r;
    r.method = row[col[0]];
    r.indicator = row[col[1]];
    r.front = row[col[2]];
    r.n = table.integer(row, col[3]);
    r.d = table.integer(row, col[4]);
    r.k = table.integer(row, col[5]);
    r.l_nearest = table.integer(row, col[6]);
    r.l_random = table.integer(row, col[7]);
    r.trial = table.integer(row, col[8]);
    r.seed = table.integer(row, col[9]);
    r.raw_value = table.number(row, col[10]);
    r.canonical_value = table.number(row, col[11]);
    r.evaluations = table.integer(row, col[12]);
    r.accepted_swaps = table.integer(row, col[13]);
    r.wall_time_ms = table.number(row, col[14]);
    r.listbuild_ms = table.number(row, col[15]);
    out.push_back(std::move(r));
  }
  return out;
}

void write_trace_csv(const std::filesystem::path& path, const SwapTrace& trace) {
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (!f) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  std::fputs("eval_index,dist,success,canonical_after\n", f);
  for (const auto& row : trace) {
    std::fprintf(f, "%llu,%.17g,%d,%.17g\n", static_cast<unsigned long long>(row.eval_index),
                 row.dist, row.success ? 1 : 0, row.canonical_after);
  }
  if (std::fclose(f) != 0) {
    throw std::runtime_error("error writing '" + path.string() + "'");
  }
}

SwapTrace read_trace_csv(const std::filesystem::path& path) {
  const CsvTable table(path);
  const std::size_t ci = table.column("eval_index");
  const std::size_t cd = table.column("dist");
  const std::size_t cs = table.column("success");
  const std::size_t cv = table.column("canonical_after");
  SwapTrace out;
  out.reserve(table.rows().size());
  for (const auto& row : table.rows()) {
    out.push_back({table.integer(row, ci), table.number(row, cd), table.integer(row, cs) != 0,
                   table.number(row, cv)});
  }
  return out;
}

std::string verdict_text(char verdict) {
  switch (verdict) {
    case '+': return "+";
    case '-': return "-";
    default: return "≈";
  }
}

void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  for (std::size_t c = 0; c < std::size(kSummaryColumns); ++c) {
    out << (c ? "," : "") << kSummaryColumns[c];
  }
  out << '\n';
  for (const auto& r : rows) {
    out << r.method << ',' << format_double(r.mean) << ',' << format_double(r.std) << ','
        << format_double(r.rel_error_pct) << ',' << verdict_text(r.verdict) << ',' << r.indicator
        << ',' << r.front << ',' << r.n << ',' << r.d << ',' << r.k << ','
        << format_double(r.mean_evaluations) << ',' << format_ms(r.mean_wall_ms) << '\n';
  }
}

std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path) {
  const CsvTable table(path);
  std::vector<std::size_t> col;
  for (const char* name : kSummaryColumns) {
    col.push_back(table.column(name));
  }
  std::vector<SummaryRow> out;
  for (const auto& row : table.rows()) {
    SummaryRow r;
    r.method = row[col[0]];
    r.mean = table.number(row, col[1]);
    r.std = table.number(row, col[2]);
    r.rel_error_pct = table.number(row, col[3]);
    const std::string& v = row[col[4]];
    r.verdict = v == "+" ? '+' : v == "-" ? '-' : '~';
    r.indicator = row[col[5]];
    r.front = row[col[6]];
    r.n = table.integer(row, col[7]);
    r.d = table.integer(row, col[8]);
    r.k = table.integer(row, col[9]);
    r.mean_evaluations = table.number(row, col[10]);
    r.mean_wall_ms = table.number(row, col[11]);
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  bool log = false;

  double map(double v) const {
    const double a = log ? std::log10(lo) : lo;
    const double b = log ? std::log10(hi) : hi;
    const double x = log ? std::log10(v) : v;
    return b > a ? (x - a) / (b - a) : 0.5;
  }
};

Axis fit_axis(const std::vector<const std::vector<double>*>& data, bool log) {
  Axis axis;
  axis.log = log;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto* values : data) {
    for (double v : *values) {
      if (log && !(v > 0.0)) {
        continue;
      }
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(lo <= hi)) {
    lo = log ? 1.0 : 0.0;
    hi = log ? 10.0 : 1.0;
  }
  if (lo == hi) {
    if (log) {
      lo /= 2.0;
      hi *= 2.0;
    } else {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  axis.lo = lo;
  axis.hi = hi;
  return axis;
}

std::vector<double> ticks(const Axis& axis) {
  std::vector<double> out;
  if (axis.log) {
    for (double e = std::floor(std::log10(axis.lo)); e <= std::ceil(std::log10(axis.hi)); e += 1.0) {
      const double v = std::pow(10.0, e);
      if (v >= axis.lo * (1 - 1e-12) && v <= axis.hi * (1 + 1e-12)) {
        out.push_back(v);
      }
    }
    if (out.size() < 2) {
      out = {axis.lo, axis.hi};
    }
    return out;
  }
  for (int i = 0; i <= 5; ++i) {
    out.push_back(axis.lo + (axis.hi - axis.lo) * i / 5.0);
  }
  return out;
}

}  // namespace

std::string render_svg(const SvgChart& chart) {
  std::vector<const std::vector<double>*> xs;
  std::vector<const std::vector<double>*> ys;
  for (const auto& s : chart.series) {
    xs.push_back(&s.x);
    ys.push_back(&s.y);
  }
  const Axis ax = fit_axis(xs, chart.log_x);
  const Axis ay = fit_axis(ys, chart.log_y);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + ax.map(v) * pw; };
  auto py = [&](double v) { return kTop + (1.0 - ay.map(v)) * ph; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << num(kWidth / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
      << escape_xml(chart.title) << "</text>\n";
  svg << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw)
      << "\" height=\"" << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ticks(ax)) {
    svg << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(px(t))
        << "\" y2=\"" << num(kTop + ph + 5) << "\" stroke=\"black\"/>"
        << "<text x=\"" << num(px(t)) << "\" y=\"" << num(kTop + ph + 18)
        << "\" text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
  }
  for (double t : ticks(ay)) {
    svg << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py(t)) << "\" x2=\"" << num(kLeft)
        << "\" y2=\"" << num(py(t)) << "\" stroke=\"black\"/>"
        << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(t) + 4)
        << "\" text-anchor=\"end\">" << tick_label(t) << "</text>\n";
  }
  svg << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 10)
      << "\" text-anchor=\"middle\">" << escape_xml(chart.x_label) << "</text>\n";
  svg << "<text transform=\"translate(16," << num(kTop + ph / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">" << escape_xml(chart.y_label) << "</text>\n";

  double legend_y = kTop + 10;
  for (const auto& s : chart.series) {
    const std::string color = s.color.empty() ? "black" : s.color;
    if (s.markers_only) {
      svg << "<g fill=\"" << color << "\" fill-opacity=\"0.6\">\n";
      for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
        if ((chart.log_x && !(s.x[i] > 0)) || (chart.log_y && !(s.y[i] > 0))) {
          continue;
        }
        svg << "<circle cx=\"" << num(px(s.x[i])) << "\" cy=\"" << num(py(s.y[i]))
            << "\" r=\"1.5\"/>\n";
      }
      svg << "</g>\n";
    } else {
      svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
        if ((chart.log_x && !(s.x[i] > 0)) || (chart.log_y && !(s.y[i] > 0))) {
          continue;
        }
        svg << num(px(s.x[i])) << ',' << num(py(s.y[i])) << ' ';
      }
      svg << "\"/>\n";
    }
    svg << "<rect x=\"" << num(kLeft + pw + 10) << "\" y=\"" << num(legend_y - 8)
        << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>"
        << "<text x=\"" << num(kLeft + pw + 25) << "\" y=\"" << num(legend_y + 1) << "\">"
        << escape_xml(s.label) << "</text>\n";
    legend_y += 18;
  }
  svg << "</svg>\n";
  return svg.str();
}

SvgChart trace_chart(const SwapTrace& trace, const std::string& title, bool log_x) {
  SvgChart chart;
  chart.title = title;
  chart.x_label = "evaluations";
  chart.y_label = "distance between swapped points";
  chart.log_x = log_x;
  SvgSeries failed{"unsuccessful", {}, {}, "#9ecae1", true};
  SvgSeries success{"successful", {}, {}, "#d62728", true};
  for (const auto& row : trace) {
    auto& s = row.success ? success : failed;
    s.x.push_back(static_cast<double>(row.eval_index));
    s.y.push_back(row.dist);
  }
  chart.series.push_back(std::move(failed));
  chart.series.push_back(std::move(success));
  return chart;
}

SvgChart scaling_chart(const std::vector<SummaryRow>& rows, bool wall_time, bool log_y) {
  static const char* const kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c",
                                        "#d62728", "#9467bd", "#8c564b"};
  SvgChart chart;
  chart.title = wall_time ? "wall-clock time" : "subset evaluations";
  chart.x_label = "n";
  chart.y_label = wall_time ? "mean wall time (ms)" : "mean evaluations";
  chart.log_y = log_y;
  std::map<std::string, std::vector<std::pair<double, double>>> by_method;
  std::vector<std::string> order;
  for (const auto& r : rows) {
    if (!by_method.count(r.method)) {
      order.push_back(r.method);
    }
    by_method[r.method].emplace_back(static_cast<double>(r.n),
                                     wall_time ? r.mean_wall_ms : r.mean_evaluations);
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto pts = by_method[order[i]];
    std::sort(pts.begin(), pts.end());
    SvgSeries s;
    s.label = order[i];
    s.color = kColors[i % std::size(kColors)];
    for (const auto& [x, y] : pts) {
      s.x.push_back(x);
      s.y.push_back(y);
    }
    chart.series.push_back(std::move(s));
  }
  return chart;
}

}  // namespace issp
