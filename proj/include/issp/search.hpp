// Local search over the 2-swap neighbourhood (unrestricted, candidate-list
// restricted, random-then-nearest) and greedy baselines.

#ifndef ISSP_SEARCH_HPP
#define ISSP_SEARCH_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "issp/geometry.hpp"
#include "issp/incremental.hpp"
#include "issp/indicators.hpp"
#include "issp/neighborhoods.hpp"

namespace issp {

struct Subset {
  std::vector<std::size_t> selected;
  double cached_canonical = 0.0;
  bool fresh = false;
};

/// One candidate evaluation of a local search: the distance between the
/// swapped-out and swapped-in points and whether the swap was accepted.
struct TraceRow {
  std::uint64_t eval_index = 0;  // 1-based position in the run's evaluations
  double dist = 0.0;
  bool success = false;
  double canonical_after = 0.0;
};

using SwapTrace = std::vector<TraceRow>;

struct SearchOutcome {
  Subset subset;
  double raw_value = 0.0;
  std::uint64_t evaluations = 0;
  std::uint64_t accepted_swaps = 0;
  double wall_time_ms = 0.0;
  double listbuild_ms = 0.0;
  SwapTrace trace;
  /// Evaluations spent in each sweep, in order, over all phases.
  std::vector<std::uint64_t> sweep_evaluations;
  /// Canonical value at the end of each phase (one entry for single-phase runs).
  std::vector<double> phase_canonical;
};

enum class InitMode { Random, Spread };

struct SearchOptions {
  bool trace = false;
  EvaluatorMode mode = EvaluatorMode::Incremental;
  InitMode init = InitMode::Random;
  /// Explicit starting subset; overrides `init` when set.
  std::optional<std::vector<std::size_t>> initial;
};

/// k distinct indices drawn uniformly from [0, n), in draw order.
std::vector<std::size_t> random_subset(std::size_t n, std::size_t k, std::uint64_t seed);

/// Farthest-point traversal from a seeded random start.
std::vector<std::size_t> spread_subset(const PointSet& points, std::size_t k, std::uint64_t seed);

/// First-improvement 2-swap local search over all (s, p) pairs.
SearchOutcome local_search(const PointSet& points, std::size_t k, const IndicatorSpec& spec,
                           std::uint64_t init_seed, const SearchOptions& options = {});

/// As local_search, but each s is swapped only with members of lists[s].
SearchOutcome local_search_cl(const PointSet& points, std::size_t k, const IndicatorSpec& spec,
                              const CandidateListSet& lists, std::uint64_t init_seed,
                              const SearchOptions& options = {});

/// Random-list phase of length l_random then nearest-list phase of length
/// l_nearest from the same subset. A zero length skips that phase. List
/// construction is included in the wall time.
SearchOutcome ls_rn(const PointSet& points, std::size_t k, const IndicatorSpec& spec,
                    std::size_t l_random, std::size_t l_nearest, std::uint64_t seed,
                    const SearchOptions& options = {});

/// Adds, k times, the point whose inclusion gives the best value; ties go to
/// the lowest index. Throws std::invalid_argument for s-energy.
SearchOutcome greedy(const PointSet& points, std::size_t k, const IndicatorSpec& spec);

/// Same subset as greedy with fewer evaluations, using stale marginal gains
/// as upper bounds. Supports HV, IGD and IGD+ only.
SearchOutcome lazy_greedy(const PointSet& points, std::size_t k, const IndicatorSpec& spec);

}  // namespace issp

#endif  // ISSP_SEARCH_HPP
