#include "issp/search.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <numeric>
#include <queue>
#include <random>
#include <stdexcept>
#include <string>

namespace issp {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

void check_sizes(const PointSet& points, std::size_t k) {
  if (points.size() < 2) {
    throw std::invalid_argument("search needs at least two points");
  }
  if (k < 2 || k >= points.size()) {
    throw std::invalid_argument("subset size must satisfy 2 <= k < n; got k = " +
                                std::to_string(k) + " for n = " + std::to_string(points.size()));
  }
}

std::vector<std::size_t> initial_subset(const PointSet& points, std::size_t k, std::uint64_t seed,
                                        const SearchOptions& options) {
  if (options.initial) {
    const auto& init = *options.initial;
    if (init.size() != k) {
      throw std::invalid_argument("initial subset has the wrong size");
    }
    std::vector<char> seen(points.size(), 0);
    for (std::size_t idx : init) {
      if (idx >= points.size() || seen[idx]) {
        throw std::invalid_argument("initial subset has a bad or repeated index");
      }
      seen[idx] = 1;
    }
    return init;
  }
  if (options.init == InitMode::Spread) {
    return spread_subset(points, k, seed);
  }
  return random_subset(points.size(), k, seed);
}

// State shared by the sweeps of one run, possibly spanning several phases.
class SweepRunner {
 public:
  SweepRunner(const PointSet& points, const IndicatorSpec& spec, const SearchOptions& options)
      : points_(points),
        options_(options),
        evaluator_(make_swap_evaluator(spec, points, counter_, options.mode)),
        in_subset_(points.size(), 0) {}

  void start(const std::vector<std::size_t>& init) {
    evaluator_->assign(init);
    for (std::size_t idx : init) {
      in_subset_[idx] = 1;
    }
  }

  // Sweeps until one full pass accepts nothing. `partners(s)` yields the
  // candidate indices for the point s, in scan order.
  template <typename Partners>
  void run(Partners&& partners) {
    const std::size_t k = evaluator_->selected().size();
    for (;;) {
      const std::uint64_t before = counter_.count();
      bool improved = false;
      for (std::size_t slot = 0; slot < k; ++slot) {
        const std::size_t s = evaluator_->selected()[slot];
        evaluator_->focus(slot);
        for (std::size_t p : partners(s)) {
          if (in_subset_[p]) {
            continue;
          }
          const bool ok = evaluator_->try_swap(p);
          if (options_.trace) {
            if (ok) {
              evaluator_->commit();
            }
            outcome_.trace.push_back(
                {counter_.count(), euclidean_dist(points_[s], points_[p]), ok,
                 evaluator_->canonical()});
          } else if (ok) {
            evaluator_->commit();
          }
          if (ok) {
            in_subset_[s] = 0;
            in_subset_[p] = 1;
            ++outcome_.accepted_swaps;
            improved = true;
            break;
          }
        }
      }
      outcome_.sweep_evaluations.push_back(counter_.count() - before);
      if (!improved) {
        break;
      }
    }
    outcome_.phase_canonical.push_back(evaluator_->canonical());
  }

  const std::vector<std::size_t>& selected() const { return evaluator_->selected(); }

  SearchOutcome finish(const IndicatorSpec& spec, Clock::time_point started) {
    outcome_.subset.selected = evaluator_->selected();
    outcome_.raw_value = indicator_value(spec, points_.select(outcome_.subset.selected));
    outcome_.subset.cached_canonical = to_canonical(spec.kind, outcome_.raw_value);
    outcome_.subset.fresh = true;
    outcome_.evaluations = counter_.count();
    outcome_.wall_time_ms = elapsed_ms(started);
    return std::move(outcome_);
  }

  SearchOutcome& outcome() { return outcome_; }

 private:
  const PointSet& points_;
  const SearchOptions& options_;
  EvaluationCounter counter_;
  std::unique_ptr<SwapEvaluator> evaluator_;
  std::vector<char> in_subset_;
  SearchOutcome outcome_;
};

class IndexRange {
 public:
  explicit IndexRange(std::size_t n) : n_(n) {}
  struct iterator {
    std::size_t i;
    std::size_t operator*() const { return i; }
    iterator& operator++() {
      ++i;
      return *this;
    }
    bool operator!=(const iterator& o) const { return i != o.i; }
  };
  iterator begin() const { return {0}; }
  iterator end() const { return {n_}; }

 private:
  std::size_t n_;
};

void run_restricted(SweepRunner& runner, const CandidateListSet& lists) {
  runner.run([&](std::size_t s) -> const std::vector<std::size_t>& { return lists[s]; });
}

constexpr std::uint64_t kListSeedOffset = 0x9E3779B97F4A7C15ULL;

}  // namespace

std::vector<std::size_t> random_subset(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k > n) {
    throw std::invalid_argument("cannot draw more indices than points");
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  for (std::size_t t = 0; t < k; ++t) {
    std::uniform_int_distribution<std::size_t> pick(t, n - 1);
    std::swap(idx[t], idx[pick(rng)]);
  }
  idx.resize(k);
  return idx;
}

std::vector<std::size_t> spread_subset(const PointSet& points, std::size_t k, std::uint64_t seed) {
  const std::size_t n = points.size();
  if (k > n || n == 0) {
    throw std::invalid_argument("cannot draw more indices than points");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::size_t> out{pick(rng)};
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  while (out.size() < k) {
    const std::size_t last = out.back();
    std::size_t best = 0;
    double best_dist = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], squared_dist(points[i], points[last]));
      if (nearest[i] > best_dist) {
        best_dist = nearest[i];
        best = i;
      }
    }
    out.push_back(best);
  }
  return out;
}

SearchOutcome local_search(const PointSet& points, std::size_t k, const IndicatorSpec& spec,
                           std::uint64_t init_seed, const SearchOptions& options) {
  check_sizes(points, k);
  const auto started = Clock::now();
  SweepRunner runner(points, spec, options);
  runner.start(initial_subset(points, k, init_seed, options));
  const IndexRange all(points.size());
  runner.run([&](std::size_t) { return all; });
  return runner.finish(spec, started);
}

SearchOutcome local_search_cl(const PointSet& points, std::size_t k, const IndicatorSpec& spec,
                              const CandidateListSet& lists, std::uint64_t init_seed,
                              const SearchOptions& options) {
  check_sizes(points, k);
  if (!lists.built_for(points)) {
    throw std::invalid_argument("candidate lists were built for a different point set");
  }
  const auto started = Clock::now();
  SweepRunner runner(points, spec, options);
  runner.start(initial_subset(points, k, init_seed, options));
  run_restricted(runner, lists);
  return runner.finish(spec, started);
}

SearchOutcome ls_rn(const PointSet& points, std::size_t k, const IndicatorSpec& spec,
                    std::size_t l_random, std::size_t l_nearest, std::uint64_t seed,
                    const SearchOptions& options) {
  check_sizes(points, k);
  const std::size_t n = points.size();
  if (l_random > n - 1 || l_nearest > n - 1) {
    throw std::invalid_argument("candidate list length must be at most n - 1");
  }
  const auto started = Clock::now();
  SweepRunner runner(points, spec, options);
  runner.start(initial_subset(points, k, seed, options));
  double listbuild_ms = 0.0;
  if (l_random > 0) {
    const auto t0 = Clock::now();
    const auto lists = build_random_list(points, l_random, seed + kListSeedOffset);
    listbuild_ms += elapsed_ms(t0);
    run_restricted(runner, lists);
  }
  if (l_nearest > 0) {
    const auto t0 = Clock::now();
    const auto lists = build_nearest_list(points, l_nearest);
    listbuild_ms += elapsed_ms(t0);
    run_restricted(runner, lists);
  }
  runner.outcome().listbuild_ms = listbuild_ms;
  return runner.finish(spec, started);
}

SearchOutcome greedy(const PointSet& points, std::size_t k, const IndicatorSpec& spec) {
  if (k == 0 || k >= points.size()) {
    throw std::invalid_argument("greedy needs 1 <= k < n");
  }
  const auto started = Clock::now();
  EvaluationCounter counter;
  auto scorer = make_greedy_scorer(spec, points, counter);
  const std::size_t n = points.size();
  std::vector<char> taken(n, 0);
  for (std::size_t round = 0; round < k; ++round) {
    std::size_t best = n;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < n; ++p) {
      if (taken[p]) {
        continue;
      }
      const double score = scorer->score(p);
      if (best == n || score > best_score) {
        best = p;
        best_score = score;
      }
    }
    scorer->add(best);
    taken[best] = 1;
  }
  SearchOutcome out;
  out.subset.selected = scorer->selected();
  out.raw_value = indicator_value(spec, points.select(out.subset.selected));
  out.subset.cached_canonical = to_canonical(spec.kind, out.raw_value);
  out.subset.fresh = true;
  out.evaluations = counter.count();
  out.wall_time_ms = elapsed_ms(started);
  out.phase_canonical.push_back(out.subset.cached_canonical);
  return out;
}

SearchOutcome lazy_greedy(const PointSet& points, std::size_t k, const IndicatorSpec& spec) {
  if (spec.kind != IndicatorKind::HV && spec.kind != IndicatorKind::IGD &&
      spec.kind != IndicatorKind::IGDPlus) {
    throw std::invalid_argument("lazy greedy supports hv, igd and igdp only");
  }
  if (k == 0 || k >= points.size()) {
    throw std::invalid_argument("greedy needs 1 <= k < n");
  }
  const auto started = Clock::now();
  EvaluationCounter counter;
  auto scorer = make_greedy_scorer(spec, points, counter);
  const std::size_t n = points.size();

  // Round one scores every point, exactly like greedy.
  std::size_t first = 0;
  std::vector<double> first_scores(n);
  for (std::size_t p = 0; p < n; ++p) {
    first_scores[p] = scorer->score(p);
    if (first_scores[p] > first_scores[first]) {
      first = p;
    }
  }
  scorer->add(first);

  struct Entry {
    double bound;
    std::size_t index;
    std::size_t round;  // selection size the bound was computed against
  };
  // Highest bound first, then lowest index.
  auto lower = [](const Entry& a, const Entry& b) {
    return a.bound < b.bound || (a.bound == b.bound && a.index > b.index);
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower)> heap(lower);
  const bool gains = scorer->empty_scores_are_gains();
  for (std::size_t p = 0; p < n; ++p) {
    if (p != first) {
      heap.push({gains ? first_scores[p] : std::numeric_limits<double>::infinity(), p, 0});
    }
  }
  for (std::size_t size = 1; size < k; ++size) {
    for (;;) {
      Entry top = heap.top();
      heap.pop();
      if (top.round == size) {
        scorer->add(top.index);
        break;
      }
      top.bound = scorer->score(top.index);
      top.round = size;
      heap.push(top);
    }
  }
  SearchOutcome out;
  out.subset.selected = scorer->selected();
  out.raw_value = indicator_value(spec, points.select(out.subset.selected));
  out.subset.cached_canonical = to_canonical(spec.kind, out.raw_value);
  out.subset.fresh = true;
  out.evaluations = counter.count();
  out.wall_time_ms = elapsed_ms(started);
  out.phase_canonical.push_back(out.subset.cached_canonical);
  return out;
}

}  // namespace issp
