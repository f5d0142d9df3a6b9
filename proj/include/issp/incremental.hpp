// Counted evaluation of 2-swap and add-one neighbours of a subset.
//
// Each try_swap / score call is one subset evaluation and increments the
// run's EvaluationCounter by exactly one. The incremental evaluators reuse
// per-slot state (remaining points, per-reference minima, pair sums) so a
// candidate costs O(k d) or O(|Z| d) instead of a full recomputation; the
// Full mode recomputes every candidate from scratch through evaluate().

#ifndef ISSP_INCREMENTAL_HPP
#define ISSP_INCREMENTAL_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "issp/geometry.hpp"
#include "issp/indicators.hpp"

namespace issp {

enum class EvaluatorMode { Incremental, Full };

class SwapEvaluator {
 public:
  SwapEvaluator(const IndicatorSpec& spec, const PointSet& points, EvaluationCounter& counter);
  virtual ~SwapEvaluator() = default;
  SwapEvaluator(const SwapEvaluator&) = delete;
  SwapEvaluator& operator=(const SwapEvaluator&) = delete;

  /// Sets the current subset (slot order is preserved). Not counted.
  /// Throws if the indicator is undefined on it.
  void assign(std::span<const std::size_t> selected);

  /// Prepares swaps that replace the point currently in `slot`.
  void focus(std::size_t slot);

  /// One counted evaluation of S - {S[slot]} + {candidate}. True iff the
  /// canonical value strictly increases. Indicator errors count as a
  /// non-improving evaluation.
  bool try_swap(std::size_t candidate);

  /// Applies the last improving try_swap to the focused slot.
  void commit();

  const std::vector<std::size_t>& selected() const noexcept { return selected_; }
  std::size_t focused_slot() const noexcept { return slot_; }
  /// Canonical value of the current subset as tracked through the swaps.
  double canonical() const noexcept { return canonical_; }

 protected:
  virtual void on_assign() = 0;
  virtual void on_focus() = 0;
  /// Returns the canonical value gain when the swap improves.
  virtual std::optional<double> on_try(std::size_t candidate) = 0;
  /// Called after selected_[slot_] has been replaced; must update canonical_.
  virtual void on_commit() = 0;

  const IndicatorSpec& spec_;
  const PointSet& points_;
  EvaluationCounter& counter_;
  std::vector<std::size_t> selected_;
  std::size_t slot_ = 0;
  double canonical_ = 0.0;

 private:
  std::size_t pending_ = 0;
  bool has_pending_ = false;
};

std::unique_ptr<SwapEvaluator> make_swap_evaluator(const IndicatorSpec& spec,
                                                   const PointSet& points,
                                                   EvaluationCounter& counter,
                                                   EvaluatorMode mode = EvaluatorMode::Incremental);

/// Scores add-one extensions of a growing selection for greedy selection.
///
/// For a nonempty selection the score of HV, IGD, IGD+ and R2 is the marginal
/// improvement, which never increases as the selection grows; for the other
/// indicators it is the canonical value of the extended set. In every case a
/// larger score means a better extended set.
class GreedyScorer {
 public:
  virtual ~GreedyScorer() = default;
  virtual double score(std::size_t candidate) = 0;
  virtual void add(std::size_t candidate) = 0;
  /// True when scores against the empty selection are also marginal gains.
  virtual bool empty_scores_are_gains() const noexcept = 0;
  const std::vector<std::size_t>& selected() const noexcept { return selected_; }

 protected:
  std::vector<std::size_t> selected_;
};

/// Throws std::invalid_argument for s-energy, which is undefined on one point.
std::unique_ptr<GreedyScorer> make_greedy_scorer(const IndicatorSpec& spec, const PointSet& points,
                                                 EvaluationCounter& counter);

}  // namespace issp

#endif  // ISSP_INCREMENTAL_HPP
