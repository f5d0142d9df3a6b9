#include "issp/incremental.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <stdexcept>

#include "issp/hypervolume.hpp"

namespace issp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void gather_rows(const PointSet& points, std::span<const std::size_t> indices,
                 std::vector<double>& out, std::size_t skip_slot = static_cast<std::size_t>(-1)) {
  const std::size_t dim = points.dim();
  out.resize((indices.size() - (skip_slot < indices.size() ? 1 : 0)) * dim);
  double* dst = out.data();
  for (std::size_t slot = 0; slot < indices.size(); ++slot) {
    if (slot == skip_slot) {
      continue;
    }
    std::memcpy(dst, points[indices[slot]].data(), dim * sizeof(double));
    dst += dim;
  }
}

// The five indicators built on "best point per reference vector".
class ReferenceFamily {
 public:
  enum class Aggregate { Mean, Max, MeanNr2 };

  ReferenceFamily(const IndicatorSpec& spec, std::size_t dim) : kind_(spec.kind), dim_(dim) {
    switch (kind_) {
      case IndicatorKind::IGD:
      case IndicatorKind::IGDPlus:
        refs_ = &*spec.reference_set;
        aggregate_ = Aggregate::Mean;
        break;
      case IndicatorKind::Epsilon:
        refs_ = &*spec.reference_set;
        aggregate_ = Aggregate::Max;
        break;
      case IndicatorKind::R2:
        refs_ = &*spec.weight_set;
        aggregate_ = Aggregate::Mean;
        anchor_ = spec.utopian_point ? spec.utopian_point->coords() : std::vector<double>(dim, 0.0);
        break;
      case IndicatorKind::NR2:
        refs_ = &*spec.weight_set;
        aggregate_ = Aggregate::MeanNr2;
        anchor_ = spec.reference_point->coords();
        break;
      default:
        throw std::logic_error("not a reference-based indicator");
    }
  }

  static bool handles(IndicatorKind kind) noexcept {
    return kind != IndicatorKind::HV && kind != IndicatorKind::SEnergy;
  }

  std::size_t size() const noexcept { return refs_->size(); }
  Aggregate aggregate() const noexcept { return aggregate_; }
  IndicatorKind kind() const noexcept { return kind_; }

  double cost(std::size_t z, const double* p) const noexcept {
    const double* ref = refs_->flat().data() + z * dim_;
    switch (kind_) {
      case IndicatorKind::IGD: return detail::igd_cost(ref, p, dim_);
      case IndicatorKind::IGDPlus: return detail::igd_plus_cost(ref, p, dim_);
      case IndicatorKind::Epsilon: return detail::epsilon_cost(ref, p, dim_);
      case IndicatorKind::R2: return detail::r2_cost(ref, p, anchor_.data(), dim_);
      case IndicatorKind::NR2: return detail::nr2_cost(ref, p, anchor_.data(), dim_);
      default: return 0.0;
    }
  }

  void costs(const double* p, std::vector<double>& out) const {
    out.resize(size());
    for (std::size_t z = 0; z < out.size(); ++z) {
      out[z] = cost(z, p);
    }
  }

  /// Raw indicator value from per-reference minima, summed in reference order
  /// exactly as the batch indicators do.
  template <typename MinAt>
  double value(MinAt&& min_at) const {
    const std::size_t nz = size();
    if (aggregate_ == Aggregate::Max) {
      double acc = -kInf;
      for (std::size_t z = 0; z < nz; ++z) {
        acc = std::max(acc, min_at(z));
      }
      return acc;
    }
    double acc = 0.0;
    for (std::size_t z = 0; z < nz; ++z) {
      acc += aggregate_ == Aggregate::Mean ? min_at(z) : detail::nr2_term(min_at(z), dim_);
    }
    return acc / static_cast<double>(nz);
  }

 private:
  IndicatorKind kind_;
  std::size_t dim_;
  const PointSet* refs_ = nullptr;
  Aggregate aggregate_ = Aggregate::Mean;
  std::vector<double> anchor_;
};

class HvSwapEvaluator final : public SwapEvaluator {
 public:
  HvSwapEvaluator(const IndicatorSpec& spec, const PointSet& points, EvaluationCounter& counter)
      : SwapEvaluator(spec, points, counter), engine_(points.dim()), ref_(*spec.reference_point) {}

 private:
  void on_assign() override {
    gather_rows(points_, selected_, rows_);
    canonical_ = engine_.volume(rows_, ref_);
  }

  void on_focus() override {
    gather_rows(points_, selected_, rest_, slot_);
    current_share_ = engine_.contribution(points_[selected_[slot_]], rest_, ref_);
  }

  std::optional<double> on_try(std::size_t candidate) override {
    auto share = engine_.contribution_above(points_[candidate], rest_, ref_, current_share_);
    if (!share || !(*share > current_share_)) {
      return std::nullopt;
    }
    candidate_share_ = *share;
    return candidate_share_ - current_share_;
  }

  void on_commit() override {
    canonical_ += candidate_share_ - current_share_;
    current_share_ = candidate_share_;
  }

  HypervolumeEngine engine_;
  Point ref_;
  std::vector<double> rows_;
  std::vector<double> rest_;
  double current_share_ = 0.0;
  double candidate_share_ = 0.0;
};

class ReferenceSwapEvaluator final : public SwapEvaluator {
 public:
  ReferenceSwapEvaluator(const IndicatorSpec& spec, const PointSet& points,
                         EvaluationCounter& counter)
      : SwapEvaluator(spec, points, counter), family_(spec, points.dim()) {}

 private:
  void on_assign() override {
    const std::size_t k = selected_.size();
    const std::size_t nz = family_.size();
    slot_costs_.assign(k, {});
    for (std::size_t s = 0; s < k; ++s) {
      family_.costs(points_[selected_[s]].data(), slot_costs_[s]);
    }
    best_.assign(nz, kInf);
    second_.assign(nz, kInf);
    best_slot_.assign(nz, 0);
    refresh_minima();
    value_ = family_.value([&](std::size_t z) { return best_[z]; });
    canonical_ = to_canonical(family_.kind(), value_);
  }

  void refresh_minima() {
    const std::size_t nz = family_.size();
    for (std::size_t z = 0; z < nz; ++z) {
      double best = kInf;
      double second = kInf;
      std::size_t owner = 0;
      for (std::size_t s = 0; s < slot_costs_.size(); ++s) {
        const double c = slot_costs_[s][z];
        if (c < best) {
          second = best;
          best = c;
          owner = s;
        } else if (c < second) {
          second = c;
        }
      }
      best_[z] = best;
      second_[z] = second;
      best_slot_[z] = owner;
    }
  }

  void on_focus() override {
    const std::size_t nz = family_.size();
    rest_min_.resize(nz);
    for (std::size_t z = 0; z < nz; ++z) {
      rest_min_[z] = best_slot_[z] == slot_ ? second_[z] : best_[z];
    }
  }

  std::optional<double> on_try(std::size_t candidate) override {
    const double* p = points_[candidate].data();
    const std::size_t nz = family_.size();
    candidate_costs_.resize(nz);
    const bool minimize = orientation_of(family_.kind()) == Orientation::Minimize;
    if (family_.aggregate() == ReferenceFamily::Aggregate::Max) {
      // The maximum can only drop below the current value if every term does.
      for (std::size_t z = 0; z < nz; ++z) {
        const double c = family_.cost(z, p);
        candidate_costs_[z] = c;
        if (!(std::min(rest_min_[z], c) < value_)) {
          return std::nullopt;
        }
      }
    } else {
      for (std::size_t z = 0; z < nz; ++z) {
        candidate_costs_[z] = family_.cost(z, p);
      }
    }
    const double value =
        family_.value([&](std::size_t z) { return std::min(rest_min_[z], candidate_costs_[z]); });
    const double canonical = minimize ? -value : value;
    if (!(canonical > canonical_)) {
      return std::nullopt;
    }
    candidate_value_ = value;
    return canonical - canonical_;
  }

  void on_commit() override {
    slot_costs_[slot_].swap(candidate_costs_);
    refresh_minima();
    value_ = candidate_value_;
    canonical_ = to_canonical(family_.kind(), value_);
  }

  ReferenceFamily family_;
  std::vector<std::vector<double>> slot_costs_;
  std::vector<double> best_;
  std::vector<double> second_;
  std::vector<std::size_t> best_slot_;
  std::vector<double> rest_min_;
  std::vector<double> candidate_costs_;
  double value_ = 0.0;
  double candidate_value_ = 0.0;
};

class EnergySwapEvaluator final : public SwapEvaluator {
 public:
  EnergySwapEvaluator(const IndicatorSpec& spec, const PointSet& points, EvaluationCounter& counter)
      : SwapEvaluator(spec, points, counter), exponent_(spec.exponent_for(points.dim())) {}

 private:
  // E(S) = E(R) + 2 * sum_{q in R} |s - q|^-s, with R = S - {s}.
  double pair_sum(const double* p, double stop_at) const {
    const std::size_t dim = points_.dim();
    double acc = 0.0;
    for (std::size_t s = 0; s < selected_.size(); ++s) {
      if (s == slot_) {
        continue;
      }
      acc += detail::energy_pair(p, points_[selected_[s]].data(), dim, exponent_);
      if (acc >= stop_at) {
        break;
      }
    }
    return acc;
  }

  void on_assign() override {
    canonical_ = -s_energy(points_.select(selected_), exponent_);
  }

  void on_focus() override {
    current_sum_ = pair_sum(points_[selected_[slot_]].data(), kInf);
  }

  std::optional<double> on_try(std::size_t candidate) override {
    const double sum = pair_sum(points_[candidate].data(), current_sum_);
    if (!(sum < current_sum_)) {
      return std::nullopt;
    }
    candidate_sum_ = sum;
    return 2.0 * (current_sum_ - candidate_sum_);
  }

  void on_commit() override {
    canonical_ += 2.0 * (current_sum_ - candidate_sum_);
    current_sum_ = candidate_sum_;
  }

  double exponent_;
  double current_sum_ = 0.0;
  double candidate_sum_ = 0.0;
};

class FullSwapEvaluator final : public SwapEvaluator {
 public:
  using SwapEvaluator::SwapEvaluator;

 private:
  double canonical_of(std::span<const std::size_t> indices) const {
    return to_canonical(spec_.kind, indicator_value(spec_, points_.select(indices)));
  }

  void on_assign() override { canonical_ = canonical_of(selected_); }

  void on_focus() override {}

  std::optional<double> on_try(std::size_t candidate) override {
    scratch_ = selected_;
    scratch_[slot_] = candidate;
    const double canonical = canonical_of(scratch_);
    if (!(canonical > canonical_)) {
      return std::nullopt;
    }
    candidate_canonical_ = canonical;
    return canonical - canonical_;
  }

  void on_commit() override { canonical_ = candidate_canonical_; }

  std::vector<std::size_t> scratch_;
  double candidate_canonical_ = 0.0;
};

class HvGreedyScorer final : public GreedyScorer {
 public:
  HvGreedyScorer(const IndicatorSpec& spec, const PointSet& points, EvaluationCounter& counter)
      : points_(points), counter_(counter), engine_(points.dim()), ref_(*spec.reference_point) {}

  double score(std::size_t candidate) override {
    counter_.increment();
    return engine_.contribution(points_[candidate], rows_, ref_);
  }

  void add(std::size_t candidate) override {
    selected_.push_back(candidate);
    auto row = points_[candidate];
    rows_.insert(rows_.end(), row.begin(), row.end());
  }

  bool empty_scores_are_gains() const noexcept override { return true; }

 private:
  const PointSet& points_;
  EvaluationCounter& counter_;
  HypervolumeEngine engine_;
  Point ref_;
  std::vector<double> rows_;
};

class ReferenceGreedyScorer final : public GreedyScorer {
 public:
  ReferenceGreedyScorer(const IndicatorSpec& spec, const PointSet& points,
                        EvaluationCounter& counter)
      : points_(points), counter_(counter), family_(spec, points.dim()),
        best_(family_.size(), kInf) {}

  double score(std::size_t candidate) override {
    counter_.increment();
    family_.costs(points_[candidate].data(), costs_);
    const bool gain_form = family_.kind() == IndicatorKind::IGD ||
                           family_.kind() == IndicatorKind::IGDPlus ||
                           family_.kind() == IndicatorKind::R2;
    if (gain_form && !selected_.empty()) {
      double acc = 0.0;
      for (std::size_t z = 0; z < costs_.size(); ++z) {
        acc += std::max(0.0, best_[z] - costs_[z]);
      }
      return acc / static_cast<double>(costs_.size());
    }
    const double value =
        family_.value([&](std::size_t z) { return std::min(best_[z], costs_[z]); });
    return to_canonical(family_.kind(), value);
  }

  void add(std::size_t candidate) override {
    selected_.push_back(candidate);
    family_.costs(points_[candidate].data(), costs_);
    for (std::size_t z = 0; z < costs_.size(); ++z) {
      best_[z] = std::min(best_[z], costs_[z]);
    }
  }

  bool empty_scores_are_gains() const noexcept override { return false; }

 private:
  const PointSet& points_;
  EvaluationCounter& counter_;
  ReferenceFamily family_;
  std::vector<double> best_;
  std::vector<double> costs_;
};

}  // namespace

SwapEvaluator::SwapEvaluator(const IndicatorSpec& spec, const PointSet& points,
                             EvaluationCounter& counter)
    : spec_(spec), points_(points), counter_(counter) {
  spec_.validate(points.dim());
}

void SwapEvaluator::assign(std::span<const std::size_t> selected) {
  for (std::size_t idx : selected) {
    if (idx >= points_.size()) {
      throw std::out_of_range("subset index out of range");
    }
  }
  selected_.assign(selected.begin(), selected.end());
  slot_ = 0;
  has_pending_ = false;
  on_assign();
}

void SwapEvaluator::focus(std::size_t slot) {
  if (slot >= selected_.size()) {
    throw std::out_of_range("slot out of range");
  }
  slot_ = slot;
  has_pending_ = false;
  on_focus();
}

bool SwapEvaluator::try_swap(std::size_t candidate) {
  counter_.increment();
  has_pending_ = false;
  std::optional<double> gain;
  try {
    gain = on_try(candidate);
  } catch (const DegenerateSubsetError&) {
    gain.reset();
  }
  if (!gain) {
    return false;
  }
  pending_ = candidate;
  has_pending_ = true;
  return true;
}

void SwapEvaluator::commit() {
  if (!has_pending_) {
    throw std::logic_error("commit without an improving swap");
  }
  selected_[slot_] = pending_;
  has_pending_ = false;
  on_commit();
}

std::unique_ptr<SwapEvaluator> make_swap_evaluator(const IndicatorSpec& spec,
                                                   const PointSet& points,
                                                   EvaluationCounter& counter,
                                                   EvaluatorMode mode) {
  spec.validate(points.dim());
  if (mode == EvaluatorMode::Full) {
    return std::make_unique<FullSwapEvaluator>(spec, points, counter);
  }
  if (spec.kind == IndicatorKind::HV) {
    return std::make_unique<HvSwapEvaluator>(spec, points, counter);
  }
  if (spec.kind == IndicatorKind::SEnergy) {
    return std::make_unique<EnergySwapEvaluator>(spec, points, counter);
  }
  return std::make_unique<ReferenceSwapEvaluator>(spec, points, counter);
}

std::unique_ptr<GreedyScorer> make_greedy_scorer(const IndicatorSpec& spec, const PointSet& points,
                                                 EvaluationCounter& counter) {
  spec.validate(points.dim());
  if (spec.kind == IndicatorKind::SEnergy) {
    throw std::invalid_argument(
        "greedy selection is undefined for s-energy on one point; seed with a pair instead");
  }
  if (spec.kind == IndicatorKind::HV) {
    return std::make_unique<HvGreedyScorer>(spec, points, counter);
  }
  return std::make_unique<ReferenceGreedyScorer>(spec, points, counter);
}

}  // namespace issp
