#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

#include <CLI11.hpp>
#include <json.hpp>

#include "issp/harness.hpp"
#include "issp/instances.hpp"
#include "issp/neighborhoods.hpp"

namespace issp::cli {

namespace {

using nlohmann::json;

// Flag combinations that CLI11 cannot express; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string hex_hash(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (!item.empty()) {
      out.push_back(item);
    }
  }
  return out;
}

std::vector<double> parse_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) {
        throw std::invalid_argument(item);
      }
    } catch (const std::exception&) {
      throw UsageError(std::string("bad number in ") + what + ": '" + item + "'");
    }
  }
  if (out.empty()) {
    throw UsageError(std::string("empty ") + what);
  }
  return out;
}

// Appends one invocation record to <artifact>.manifest.json.
void append_manifest(const std::filesystem::path& artifact, json entry) {
  const std::filesystem::path path = artifact.string() + ".manifest.json";
  json doc = {{"artifact", artifact.filename().string()}, {"invocations", json::array()}};
  if (std::filesystem::exists(path)) {
    std::ifstream in(path);
    try {
      doc = json::parse(in);
    } catch (const json::exception&) {
      // An unreadable manifest is replaced rather than blocking the run.
    }
  }
  if (std::filesystem::exists(artifact) && std::filesystem::is_regular_file(artifact)) {
    doc["artifact_bytes"] = std::filesystem::file_size(artifact);
  }
  doc["invocations"].push_back(std::move(entry));
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write manifest '" + path.string() + "'");
  }
  out << doc.dump(2) << '\n';
}

void write_manifest(const std::filesystem::path& artifact, const json& body) {
  const std::filesystem::path path = artifact.string() + ".manifest.json";
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write manifest '" + path.string() + "'");
  }
  out << body.dump(2) << '\n';
}

// A fresh output gets a fresh manifest; appended outputs accumulate invocations.
void record_manifest(const std::filesystem::path& artifact, const json& entry, bool append) {
  if (!append) {
    std::filesystem::remove(artifact.string() + ".manifest.json");
  }
  append_manifest(artifact, entry);
}

std::vector<std::string> front_choices() {
  std::vector<std::string> out;
  for (auto f : kAllFronts) {
    out.emplace_back(front_name(f));
  }
  return out;
}

std::vector<std::string> indicator_choices() {
  std::vector<std::string> out;
  for (auto k : kAllIndicators) {
    out.emplace_back(indicator_name(k));
  }
  return out;
}

std::vector<std::string> method_choices() {
  return {"ls", "ls-n", "ls-r", "ls-rn", "gs", "gs-l"};
}

// Options shared by run and sweep.
struct InstanceFlags {
  std::string front;
  std::size_t n = 0;
  std::size_t m_per_axis = 0;
  std::size_t d = 0;
  std::uint64_t seed = 1;
  std::string points;
};

struct SpecFlags {
  std::string ref_point;
  std::string ref_set;
  std::string weights;
  double s_exponent = 0.0;
};

struct SearchFlags {
  std::size_t k = 100;
  std::size_t ln = 0;
  std::size_t lr = 0;
  std::size_t trials = 31;
  std::uint64_t base_seed = 1;
  std::string trace;
  std::size_t jobs = 1;
};

void add_instance_flags(CLI::App* cmd, InstanceFlags& f) {
  cmd->add_option("--front", f.front, "front family")->check(CLI::IsMember(front_choices()));
  cmd->add_option("--n", f.n, "number of points");
  cmd->add_option("--m-per-axis", f.m_per_axis, "dtlz7 grid values per axis");
  cmd->add_option("--d", f.d, "number of objectives");
  cmd->add_option("--seed", f.seed, "instance seed");
}

void add_spec_flags(CLI::App* cmd, SpecFlags& f) {
  cmd->add_option("--ref-point", f.ref_point,
                  "HV/NR2 reference point: one value for every objective or a comma list");
  cmd->add_option("--ref-set", f.ref_set, "reference point file for igd, igdp and eps");
  cmd->add_option("--weights", f.weights, "weight vector file for r2 and nr2");
  cmd->add_option("--s-exponent", f.s_exponent, "s-energy exponent (default d + 1)")
      ->check(CLI::NonNegativeNumber);
}

void add_search_flags(CLI::App* cmd, SearchFlags& f) {
  cmd->add_option("--k", f.k, "subset size");
  cmd->add_option("--ln", f.ln, "nearest list length (default 40, 20 for ls-rn)");
  cmd->add_option("--lr", f.lr, "random list length (default 40, 20 for ls-rn)");
  cmd->add_option("--trials", f.trials, "independent runs")->check(CLI::PositiveNumber);
  cmd->add_option("--base-seed", f.base_seed, "seed of trial 0; trial t uses base-seed + t");
  cmd->add_option("--trace", f.trace, "directory for per-trial swap traces");
  cmd->add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
}

struct LoadedInstance {
  PointSet points;
  std::optional<FrontKind> front;
  std::string label;
  std::string source;
};

LoadedInstance load_instance(const InstanceFlags& f, std::ostream& err) {
  LoadedInstance out;
  if (!f.front.empty()) {
    out.front = parse_front(f.front);
  }
  if (!f.points.empty()) {
    if (!std::filesystem::exists(f.points)) {
      throw std::runtime_error("point file '" + f.points + "' does not exist");
    }
    auto loaded = load_points(f.points);
    if (loaded.dominated_removed > 0) {
      err << "warning: removed " << loaded.dominated_removed << " dominated point(s) from '"
          << f.points << "'\n";
    }
    out.points = std::move(loaded.points);
    out.label = out.front ? std::string(front_name(*out.front))
                          : std::filesystem::path(f.points).stem().string();
    out.source = f.points;
    if (f.d != 0 && f.d != out.points.dim()) {
      throw UsageError("--d does not match the dimension of '" + f.points + "'");
    }
    return out;
  }
  if (!out.front) {
    throw UsageError("give either --points or --front with --d and --n (or --m-per-axis)");
  }
  if (f.d == 0) {
    throw UsageError("--d is required when generating an instance");
  }
  InstanceConfig cfg;
  cfg.front = *out.front;
  cfg.n = f.n;
  cfg.m_per_axis = f.m_per_axis;
  cfg.d = f.d;
  cfg.seed = f.seed;
  if (cfg.front != FrontKind::Dtlz7 && cfg.n == 0) {
    throw UsageError("--n is required for front '" + f.front + "'");
  }
  if (cfg.front == FrontKind::Dtlz7 && cfg.n == 0 && cfg.m_per_axis == 0) {
    throw UsageError("dtlz7 needs --m-per-axis or --n");
  }
  out.points = generate_instance(cfg);
  out.label = f.front;
  out.source = "generated";
  return out;
}

IndicatorSpec build_spec(IndicatorKind kind, const LoadedInstance& inst, const SpecFlags& f,
                         std::uint64_t seed) {
  const std::size_t d = inst.points.dim();
  ReferenceDefaults defaults;
  defaults.seed = seed;
  defaults.energy_exponent = f.s_exponent;
  Point ref = Point::filled(d, defaults.ref_coordinate);
  if (!f.ref_point.empty()) {
    auto values = parse_numbers(f.ref_point, "--ref-point");
    if (values.size() == 1) {
      values.assign(d, values[0]);
    }
    if (values.size() != d) {
      throw UsageError("--ref-point needs 1 or d values");
    }
    ref = Point(values);
  }
  auto reference_set = [&]() -> PointSet {
    if (!f.ref_set.empty()) {
      return read_point_file(f.ref_set);
    }
    if (!inst.front) {
      throw UsageError("this indicator needs --ref-set (or --front to generate one)");
    }
    return make_reference_set(*inst.front, defaults.reference_set_size, d, seed);
  };
  auto weights = [&]() -> PointSet {
    if (!f.weights.empty()) {
      return read_point_file(f.weights);
    }
    return make_weight_vectors(d, defaults.weight_count, seed);
  };
  switch (kind) {
    case IndicatorKind::HV: return IndicatorSpec::hypervolume(ref);
    case IndicatorKind::IGD: return IndicatorSpec::igd(reference_set());
    case IndicatorKind::IGDPlus: return IndicatorSpec::igd_plus(reference_set());
    case IndicatorKind::Epsilon: return IndicatorSpec::epsilon(reference_set());
    case IndicatorKind::R2: return IndicatorSpec::r2(weights());
    case IndicatorKind::NR2: return IndicatorSpec::nr2(weights(), ref);
    case IndicatorKind::SEnergy: return IndicatorSpec::s_energy(f.s_exponent);
  }
  throw UsageError("unknown indicator");
}

ExperimentConfig make_config(Method method, IndicatorKind kind, const LoadedInstance& inst,
                             const SearchFlags& f) {
  ExperimentConfig cfg;
  cfg.method = method;
  cfg.indicator = kind;
  cfg.front_label = inst.label;
  cfg.instance.d = inst.points.dim();
  cfg.instance.n = inst.points.size();
  if (inst.front) {
    cfg.instance.front = *inst.front;
  }
  cfg.k = f.k;
  const std::size_t default_l = method == Method::LSRN ? 20 : 40;
  cfg.l_nearest = f.ln != 0 ? f.ln : default_l;
  cfg.l_random = f.lr != 0 ? f.lr : default_l;
  cfg.trials = f.trials;
  cfg.base_seed = f.base_seed;
  if (!f.trace.empty()) {
    cfg.trace_dir = f.trace;
  }
  cfg.jobs = f.jobs;
  return cfg;
}

json config_echo(const ExperimentConfig& cfg, const LoadedInstance& inst) {
  return {{"method", method_name(cfg.method)},
          {"indicator", indicator_name(cfg.indicator)},
          {"front", cfg.front_label},
          {"source", inst.source},
          {"n", inst.points.size()},
          {"d", inst.points.dim()},
          {"points_hash", hex_hash(content_hash(inst.points))},
          {"k", cfg.k},
          {"l_N", cfg.l_nearest},
          {"l_R", cfg.l_random},
          {"trials", is_greedy(cfg.method) ? std::size_t{1} : cfg.trials},
          {"base_seed", cfg.base_seed}};
}

int cmd_gen(const InstanceFlags& f, bool reference, bool weights, bool polish,
            const std::string& out_path, std::ostream& out) {
  if (f.d == 0) {
    throw UsageError("--d is required");
  }
  PointSet points;
  std::string what = "instance";
  if (weights) {
    if (f.n == 0) {
      throw UsageError("--weights-only needs --n");
    }
    points = make_weight_vectors(f.d, f.n, f.seed);
    what = "weights";
  } else {
    if (f.front.empty()) {
      throw UsageError("--front is required");
    }
    const FrontKind front = parse_front(f.front);
    if (reference) {
      std::size_t m = f.n;
      if (front == FrontKind::Dtlz7 && f.m_per_axis != 0) {
        m = 1;
        for (std::size_t j = 0; j + 1 < f.d; ++j) {
          m *= f.m_per_axis;
        }
      }
      if (m == 0) {
        throw UsageError("--reference needs --n");
      }
      points = make_reference_set(front, m, f.d, f.seed);
      what = "reference";
    } else {
      InstanceConfig cfg;
      cfg.front = front;
      cfg.n = f.n;
      cfg.m_per_axis = f.m_per_axis;
      cfg.d = f.d;
      cfg.seed = f.seed;
      cfg.polish = polish;
      if (front != FrontKind::Dtlz7 && cfg.n == 0) {
        throw UsageError("--n is required for front '" + f.front + "'");
      }
      if (front == FrontKind::Dtlz7 && cfg.n == 0 && cfg.m_per_axis == 0) {
        throw UsageError("dtlz7 needs --m-per-axis or --n");
      }
      points = generate_instance(cfg);
    }
  }
  write_point_file(out_path, points);
  write_manifest(out_path, {{"command", "gen"},
                            {"kind", what},
                            {"front", f.front},
                            {"n", f.n},
                            {"m_per_axis", f.m_per_axis},
                            {"d", f.d},
                            {"seed", f.seed},
                            {"polish", polish},
                            {"points", points.size()},
                            {"content_hash", hex_hash(content_hash(points))}});
  out << "wrote " << points.size() << " points to " << out_path << " (hash "
      << hex_hash(content_hash(points)) << ")\n";
  return 0;
}

int cmd_run(const InstanceFlags& inst_flags, const SpecFlags& spec_flags,
            const SearchFlags& search_flags, const std::string& method_flag,
            const std::string& indicator_flag, const std::string& out_path, bool append,
            std::ostream& out, std::ostream& err) {
  const Method method = parse_method(method_flag);
  const IndicatorKind kind = parse_indicator(indicator_flag);
  const LoadedInstance inst = load_instance(inst_flags, err);
  const IndicatorSpec spec = build_spec(kind, inst, spec_flags, inst_flags.seed);
  ExperimentConfig cfg = make_config(method, kind, inst, search_flags);
  if (is_greedy(method) && cfg.trials != 1) {
    err << "note: " << method_name(method) << " is deterministic; running 1 trial instead of "
        << cfg.trials << "\n";
  }
  const auto records = run_experiment(cfg, inst.points, spec);
  write_results_csv(out_path, records, append);
  json entry = config_echo(cfg, inst);
  entry["command"] = "run";
  entry["rows"] = records.size();
  record_manifest(out_path, entry, append);
  out << (append ? "appended " : "wrote ") << records.size() << " row(s) to " << out_path
      << "\n";
  return 0;
}

int cmd_sweep(InstanceFlags inst_flags, const SpecFlags& spec_flags,
              const SearchFlags& search_flags, const std::string& fronts,
              const std::string& sizes, const std::string& methods,
              const std::string& indicators, const std::string& out_path, bool append,
              std::ostream& out, std::ostream& err) {
  if (inst_flags.d == 0) {
    throw UsageError("--d is required");
  }
  std::vector<FrontKind> front_list;
  for (const auto& f : split_list(fronts)) {
    front_list.push_back(parse_front(f));
  }
  std::vector<std::size_t> n_list;
  for (double v : parse_numbers(sizes, "--ns")) {
    if (v < 2 || v != static_cast<double>(static_cast<std::size_t>(v))) {
      throw UsageError("--ns entries must be integers >= 2");
    }
    n_list.push_back(static_cast<std::size_t>(v));
  }
  std::vector<Method> method_list;
  for (const auto& m : split_list(methods)) {
    method_list.push_back(parse_method(m));
  }
  std::vector<IndicatorKind> kind_list;
  for (const auto& k : split_list(indicators)) {
    kind_list.push_back(parse_indicator(k));
  }
  if (front_list.empty() || method_list.empty() || kind_list.empty()) {
    throw UsageError("--fronts, --methods and --indicators must be nonempty");
  }

  struct Job {
    FrontKind front;
    std::size_t n;
    IndicatorKind kind;
    Method method;
  };
  std::vector<Job> jobs;
  for (auto front : front_list) {
    for (auto n : n_list) {
      for (auto kind : kind_list) {
        for (auto method : method_list) {
          jobs.push_back({front, n, kind, method});
        }
      }
    }
  }
  // Each job runs its trials sequentially; parallelism is across jobs.
  SearchFlags per_job = search_flags;
  per_job.jobs = 1;
  std::vector<std::vector<RunRecord>> results(jobs.size());
  std::vector<std::string> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      const Job& job = jobs[j];
      try {
        InstanceFlags f = inst_flags;
        f.front = std::string(front_name(job.front));
        f.points.clear();
        if (job.front == FrontKind::Dtlz7) {
          f.m_per_axis = 0;
        }
        f.n = job.n;
        std::ostringstream quiet;
        const LoadedInstance inst = load_instance(f, quiet);
        const IndicatorSpec spec = build_spec(job.kind, inst, spec_flags, f.seed);
        const ExperimentConfig cfg = make_config(job.method, job.kind, inst, per_job);
        results[j] = run_experiment(cfg, inst.points, spec);
        std::lock_guard<std::mutex> lock(log_mutex);
        out << "done " << front_name(job.front) << " n=" << job.n << " "
            << indicator_name(job.kind) << " " << method_name(job.method) << "\n";
      } catch (const std::exception& e) {
        errors[j] = e.what();
      }
    }
  };
  const std::size_t workers = std::max<std::size_t>(1, std::min(search_flags.jobs, jobs.size()));
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) {
    pool.emplace_back(worker);
  }
  worker();
  for (auto& t : pool) {
    t.join();
  }
  std::size_t rows = 0;
  bool failed = false;
  if (!append) {
    write_results_csv(out_path, std::vector<RunRecord>{}, false);
  }
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    if (!errors[j].empty()) {
      err << "error: " << front_name(jobs[j].front) << " n=" << jobs[j].n << " "
          << indicator_name(jobs[j].kind) << " " << method_name(jobs[j].method) << ": "
          << errors[j] << "\n";
      failed = true;
      continue;
    }
    write_results_csv(out_path, results[j], true);
    rows += results[j].size();
  }
  record_manifest(out_path, {{"command", "sweep"},
                             {"fronts", fronts},
                             {"ns", sizes},
                             {"methods", methods},
                             {"indicators", indicators},
                             {"d", inst_flags.d},
                             {"seed", inst_flags.seed},
                             {"k", search_flags.k},
                             {"trials", search_flags.trials},
                             {"base_seed", search_flags.base_seed},
                             {"rows", rows}},
                  append);
  out << (append ? "appended " : "wrote ") << rows << " row(s) to " << out_path << "\n";
  return failed ? 1 : 0;
}

int cmd_analyze(const std::string& results_path, const std::string& baseline_name,
                const std::string& trace_dir, double head_frac, double tail_frac,
                const std::string& out_path, std::ostream& out,
                std::ostream& err) {
  const std::string baseline = std::string(method_name(parse_method(baseline_name)));
  std::vector<SummaryRow> rows;
  if (!results_path.empty()) {
    const auto records = read_results_csv(results_path);
    if (records.empty()) {
      throw std::runtime_error("'" + results_path + "' has no result rows");
    }
    using Key = std::tuple<std::string, std::string, std::size_t, std::size_t, std::size_t>;
    std::map<Key, std::map<std::string, std::vector<RunRecord>>> groups;
    std::map<Key, std::vector<std::string>> method_order;
    for (const auto& r : records) {
      const Key key{r.indicator, r.front, r.n, r.d, r.k};
      auto& bucket = groups[key];
      if (!bucket.count(r.method)) {
        method_order[key].push_back(r.method);
      }
      bucket[r.method].push_back(r);
    }
    for (const auto& [key, bucket] : groups) {
      auto base = bucket.find(baseline);
      if (base == bucket.end()) {
        err << "warning: skipping indicator " << std::get<0>(key) << ", front "
            << std::get<1>(key) << ", n " << std::get<2>(key) << ": no " << baseline
            << " rows\n";
        continue;
      }
      rows.push_back(aggregate(base->second, base->second));
      for (const auto& method : method_order.at(key)) {
        if (method != baseline) {
          rows.push_back(aggregate(bucket.at(method), base->second));
        }
      }
    }
    if (rows.empty()) {
      throw std::runtime_error("no group in '" + results_path + "' has " + baseline + " rows");
    }
    write_summary_csv(out_path, rows);
    write_manifest(out_path, {{"command", "analyze"},
                              {"results", results_path},
                              {"baseline", baseline},
                              {"rows", rows.size()}});
    out << "wrote " << rows.size() << " summary row(s) to " << out_path << "\n";
  }
  if (!trace_dir.empty()) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(trace_dir)) {
      if (entry.path().extension() == ".csv") {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
      throw std::runtime_error("no trace files in '" + trace_dir + "'");
    }
    const std::filesystem::path trace_out =
        results_path.empty() ? std::filesystem::path(out_path)
                             : std::filesystem::path(out_path + ".traces.csv");
    std::ofstream t(trace_out);
    if (!t) {
      throw std::runtime_error("cannot write '" + trace_out.string() + "'");
    }
    t << "trace,evaluations,successes,head_max_dist,tail_max_dist\n";
    for (const auto& file : files) {
      const auto trace = read_trace_csv(file);
      const auto s = summarize_trace(trace, head_frac, tail_frac);
      const auto successes =
          std::count_if(trace.begin(), trace.end(), [](const TraceRow& r) { return r.success; });
      auto fmt = [](const std::optional<double>& v) {
        if (!v) {
          return std::string();
        }
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", *v);
        return std::string(buf);
      };
      t << file.filename().string() << ','
        << (trace.empty() ? 0 : trace.back().eval_index) << ',' << successes << ','
        << fmt(s.head_max_dist) << ',' << fmt(s.tail_max_dist) << '\n';
    }
    out << "wrote trace summary for " << files.size() << " file(s) to " << trace_out.string()
        << "\n";
  }
  if (results_path.empty() && trace_dir.empty()) {
    throw UsageError("analyze needs --results and/or --trace");
  }
  return 0;
}

int cmd_plot(const std::vector<std::string>& traces, const std::string& summary, bool log_x,
             bool log_y, bool wall_time, const std::string& out_dir, std::ostream& out) {
  if (traces.empty() && summary.empty()) {
    throw UsageError("plot needs --trace files and/or --summary");
  }
  std::filesystem::create_directories(out_dir);
  auto save = [&](const std::filesystem::path& path, const std::string& svg) {
    std::ofstream f(path);
    if (!f) {
      throw std::runtime_error("cannot write '" + path.string() + "'");
    }
    f << svg;
    out << "wrote " << path.string() << "\n";
  };
  for (const auto& trace_path : traces) {
    const auto trace = read_trace_csv(trace_path);
    const auto stem = std::filesystem::path(trace_path).stem().string();
    save(std::filesystem::path(out_dir) / (stem + ".svg"),
         render_svg(trace_chart(trace, stem, log_x)));
  }
  if (!summary.empty()) {
    const auto rows = read_summary_csv(summary);
    if (rows.empty()) {
      throw std::runtime_error("'" + summary + "' has no rows");
    }
    const auto stem = std::filesystem::path(summary).stem().string();
    save(std::filesystem::path(out_dir) /
             (stem + (wall_time ? "_time" : "_evaluations") + ".svg"),
         render_svg(scaling_chart(rows, wall_time, log_y)));
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Indicator-based subset selection by local search", "issp"};
  app.require_subcommand(1);

  InstanceFlags gen_inst;
  bool gen_reference = false;
  bool gen_weights = false;
  bool gen_polish = false;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen", "generate a point set, reference set or weight set");
  add_instance_flags(gen, gen_inst);
  gen->add_flag("--reference", gen_reference, "write a reference set of --n points instead");
  gen->add_flag("--weights-only", gen_weights, "write --n weight vectors instead");
  gen->add_flag("--polish", gen_polish, "spread simplex samples by s-energy descent");
  gen->add_option("-o,--out", gen_out, "output point file")->required();

  InstanceFlags run_inst;
  SpecFlags run_spec;
  SearchFlags run_search;
  std::string run_method;
  std::string run_indicator;
  std::string run_out;
  auto* run_cmd = app.add_subcommand("run", "run one method on one instance");
  add_instance_flags(run_cmd, run_inst);
  run_cmd->add_option("--points", run_inst.points, "input point file");
  run_cmd->add_option("--method", run_method, "search method")
      ->required()
      ->check(CLI::IsMember(method_choices(), CLI::ignore_case));
  run_cmd->add_option("--indicator", run_indicator, "quality indicator")
      ->required()
      ->check(CLI::IsMember(indicator_choices()));
  add_spec_flags(run_cmd, run_spec);
  add_search_flags(run_cmd, run_search);
  bool run_append = false;
  run_cmd->add_option("-o,--out", run_out, "results CSV")->required();
  run_cmd->add_flag("--append", run_append, "append to an existing results CSV");

  InstanceFlags sweep_inst;
  SpecFlags sweep_spec;
  SearchFlags sweep_search;
  std::string sweep_fronts = "linear";
  std::string sweep_ns;
  std::string sweep_methods = "ls,ls-n,ls-r,ls-rn";
  std::string sweep_indicators = "hv";
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "run a grid of configurations");
  sweep->add_option("--d", sweep_inst.d, "number of objectives")->required();
  sweep->add_option("--seed", sweep_inst.seed, "instance seed");
  sweep->add_option("--fronts", sweep_fronts, "comma-separated fronts");
  sweep->add_option("--ns", sweep_ns, "comma-separated point set sizes")->required();
  sweep->add_option("--methods", sweep_methods, "comma-separated methods");
  sweep->add_option("--indicators", sweep_indicators, "comma-separated indicators");
  add_spec_flags(sweep, sweep_spec);
  add_search_flags(sweep, sweep_search);
  bool sweep_append = false;
  sweep->add_option("-o,--out", sweep_out, "results CSV")->required();
  sweep->add_flag("--append", sweep_append, "append to an existing results CSV");

  std::string an_results;
  std::string an_baseline = "LS";
  std::string an_trace;
  double an_head = 0.1;
  double an_tail = 0.1;
  std::string an_out;
  auto* analyze = app.add_subcommand("analyze", "summarize results against a baseline");
  analyze->add_option("--results", an_results, "results CSV");
  analyze->add_option("--baseline", an_baseline, "baseline method");
  analyze->add_option("--trace", an_trace, "directory of trace CSVs to summarize");
  analyze->add_option("--head-frac", an_head, "head window fraction")
      ->check(CLI::Range(1e-9, 0.5));
  analyze->add_option("--tail-frac", an_tail, "tail window fraction")
      ->check(CLI::Range(1e-9, 0.5));
  analyze->add_option("-o,--out", an_out, "summary CSV")->required();

  std::vector<std::string> plot_traces;
  std::string plot_summary;
  bool plot_log_x = false;
  bool plot_log_y = false;
  bool plot_time = false;
  std::string plot_out;
  auto* plot = app.add_subcommand("plot", "render SVG charts");
  plot->add_option("--trace", plot_traces, "trace CSV files");
  plot->add_option("--summary", plot_summary, "summary CSV");
  plot->add_flag("--log-x", plot_log_x, "logarithmic x axis");
  plot->add_flag("--log-y", plot_log_y, "logarithmic y axis");
  plot->add_flag("--wall-time", plot_time, "plot wall time instead of evaluations");
  plot->add_option("-o,--out", plot_out, "output directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (gen->parsed()) {
      return cmd_gen(gen_inst, gen_reference, gen_weights, gen_polish, gen_out, out);
    }
    if (run_cmd->parsed()) {
      return cmd_run(run_inst, run_spec, run_search, run_method, run_indicator, run_out,
                     run_append, out, err);
    }
    if (sweep->parsed()) {
      return cmd_sweep(sweep_inst, sweep_spec, sweep_search, sweep_fronts, sweep_ns,
                       sweep_methods, sweep_indicators, sweep_out, sweep_append, out, err);
    }
    if (analyze->parsed()) {
      return cmd_analyze(an_results, an_baseline, an_trace, an_head, an_tail, an_out, out, err);
    }
    if (plot->parsed()) {
      return cmd_plot(plot_traces, plot_summary, plot_log_x, plot_log_y, plot_time, plot_out,
                      out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace issp::cli
