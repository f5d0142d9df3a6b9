// Seeded multi-trial experiments, result records and their statistics.

#ifndef ISSP_HARNESS_HPP
#define ISSP_HARNESS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "issp/geometry.hpp"
#include "issp/indicators.hpp"
#include "issp/instances.hpp"
#include "issp/search.hpp"

namespace issp {

enum class Method { LS, LSN, LSR, LSRN, GS, GSL };

inline constexpr Method kAllMethods[] = {Method::LS, Method::LSN, Method::LSR,
                                         Method::LSRN, Method::GS, Method::GSL};

/// Display names LS, LS-N, LS-R, LS-RN, GS, GS-L.
std::string_view method_name(Method method) noexcept;
/// Accepts display names and lower-case flags (ls, ls-n, ...).
Method parse_method(std::string_view name);
bool is_greedy(Method method) noexcept;

struct ExperimentConfig {
  InstanceConfig instance;
  /// Label written to the records' front column; defaults to the instance front.
  std::string front_label;
  Method method = Method::LS;
  IndicatorKind indicator = IndicatorKind::HV;
  std::size_t k = 100;
  std::size_t l_nearest = 40;
  std::size_t l_random = 40;
  std::size_t trials = 31;
  std::uint64_t base_seed = 1;
  /// When set, one trace CSV per trial is written here.
  std::optional<std::filesystem::path> trace_dir;
  /// Worker threads for independent trials.
  std::size_t jobs = 1;
  EvaluatorMode mode = EvaluatorMode::Incremental;
};

struct RunRecord {
  std::string method;
  std::string indicator;
  std::string front;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t k = 0;
  std::size_t l_nearest = 0;
  std::size_t l_random = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  double raw_value = 0.0;
  double canonical_value = 0.0;
  std::uint64_t evaluations = 0;
  std::uint64_t accepted_swaps = 0;
  double wall_time_ms = 0.0;
  double listbuild_ms = 0.0;
};

/// Runs `config.trials` seeded trials (seed base_seed + t) on `points`.
/// Greedy methods are deterministic and always run once. Throws before any
/// trial when the IndicatorSpec does not fit the points.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config, const PointSet& points,
                                      const IndicatorSpec& spec);

/// Generates the instance and default reference data, then runs.
std::vector<RunRecord> run_experiment(const ExperimentConfig& config);

/// (baseline - other) / |baseline| * 100 on the canonical scale; positive
/// means `other` is worse. Throws on a zero baseline.
double relative_error(double baseline_mean, double other_mean);

/// Two-sided Wilcoxon rank-sum (Mann-Whitney) p-value. Exact enumeration
/// when |a| + |b| <= 20, otherwise the normal approximation with tie and
/// continuity corrections. Identical samples give 1.
double wilcoxon_rank_sum(const std::vector<double>& a, const std::vector<double>& b);

/// '+' when `other` is significantly better than `baseline` (canonical
/// values, larger is better), '-' when significantly worse, '~' otherwise.
char wilcoxon_verdict(const std::vector<double>& baseline, const std::vector<double>& other,
                      double alpha = 0.05);

struct TraceSummary {
  std::optional<double> head_max_dist;
  std::optional<double> tail_max_dist;
};

/// Largest successful swap distance within the first head_frac and the last
/// tail_frac of the evaluations.
TraceSummary summarize_trace(const SwapTrace& trace, double head_frac, double tail_frac);

struct SummaryRow {
  std::string method;
  double mean = 0.0;
  double std = 0.0;
  double rel_error_pct = 0.0;
  char verdict = '~';
  std::string indicator;
  std::string front;
  std::size_t n = 0;
  std::size_t d = 0;
  std::size_t k = 0;
  double mean_evaluations = 0.0;
  double mean_wall_ms = 0.0;
};

/// Mean and sample standard deviation of the raw values, relative error and
/// verdict of the canonical values against the baseline records.
SummaryRow aggregate(const std::vector<RunRecord>& records, const std::vector<RunRecord>& baseline);

void write_results_csv(std::ostream& out, const std::vector<RunRecord>& records,
                       bool header = true);
void write_results_csv(const std::filesystem::path& path, const std::vector<RunRecord>& records,
                       bool append = false);
std::vector<RunRecord> read_results_csv(const std::filesystem::path& path);

void write_trace_csv(const std::filesystem::path& path, const SwapTrace& trace);
SwapTrace read_trace_csv(const std::filesystem::path& path);

void write_summary_csv(const std::filesystem::path& path, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(const std::filesystem::path& path);

/// Text shown for a summary verdict: +, - or the approximately-equal sign.
std::string verdict_text(char verdict);

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::string color;
  bool markers_only = false;
};

struct SvgChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<SvgSeries> series;
};

/// Renders a static scatter/line chart.
std::string render_svg(const SvgChart& chart);

/// Scatter of (evaluation, distance) with successful swaps highlighted.
SvgChart trace_chart(const SwapTrace& trace, const std::string& title, bool log_x);

/// One line per method: mean evaluations (or wall time) against n.
SvgChart scaling_chart(const std::vector<SummaryRow>& rows, bool wall_time, bool log_y);

}  // namespace issp

#endif  // ISSP_HARNESS_HPP
