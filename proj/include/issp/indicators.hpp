// Quality indicators for point sets and a single counted evaluation entry point.

#ifndef ISSP_INDICATORS_HPP
#define ISSP_INDICATORS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "issp/geometry.hpp"

namespace issp {

enum class IndicatorKind { HV, IGD, IGDPlus, Epsilon, R2, NR2, SEnergy };
enum class Orientation { Maximize, Minimize };

inline constexpr IndicatorKind kAllIndicators[] = {
    IndicatorKind::HV,      IndicatorKind::IGD, IndicatorKind::IGDPlus, IndicatorKind::Epsilon,
    IndicatorKind::R2,      IndicatorKind::NR2, IndicatorKind::SEnergy};

Orientation orientation_of(IndicatorKind kind) noexcept;

/// Short command-line name: hv, igd, igdp, eps, r2, nr2, senergy.
std::string_view indicator_name(IndicatorKind kind) noexcept;
IndicatorKind parse_indicator(std::string_view name);

/// Raised by s-energy when two points of the evaluated set coincide.
class DegenerateSubsetError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Which indicator to compute and the reference data it needs.
///
/// Weight vectors are stored as the rows of a PointSet. A zero
/// `energy_exponent` means "use d + 1".
struct IndicatorSpec {
  IndicatorKind kind = IndicatorKind::HV;
  std::optional<Point> reference_point;  // HV, NR2
  std::optional<PointSet> reference_set;  // IGD, IGD+, epsilon
  std::optional<PointSet> weight_set;     // R2, NR2
  std::optional<Point> utopian_point;     // R2; defaults to the origin
  double energy_exponent = 0.0;           // s-energy

  Orientation orientation() const noexcept { return orientation_of(kind); }

  /// Throws std::invalid_argument when required data is missing or has the
  /// wrong dimension.
  void validate(std::size_t dim) const;

  double exponent_for(std::size_t dim) const noexcept {
    return energy_exponent > 0.0 ? energy_exponent : static_cast<double>(dim) + 1.0;
  }

  static IndicatorSpec hypervolume(Point ref);
  static IndicatorSpec igd(PointSet reference_set);
  static IndicatorSpec igd_plus(PointSet reference_set);
  static IndicatorSpec epsilon(PointSet reference_set);
  static IndicatorSpec r2(PointSet weights, std::optional<Point> utopian = std::nullopt);
  static IndicatorSpec nr2(PointSet weights, Point ref);
  static IndicatorSpec s_energy(double exponent = 0.0);
};

struct ScoredValue {
  double value = 0.0;      // raw indicator value
  double canonical = 0.0;  // larger is better
};

inline double to_canonical(IndicatorKind kind, double value) noexcept {
  return orientation_of(kind) == Orientation::Maximize ? value : -value;
}

/// Counts subset evaluations of one run. Owned by the caller.
class EvaluationCounter {
 public:
  void increment() noexcept { ++count_; }
  std::uint64_t count() const noexcept { return count_; }
  void reset() noexcept { count_ = 0; }

 private:
  std::uint64_t count_ = 0;
};

double hv(const PointSet& points, PointView ref);
double igd(const PointSet& points, const PointSet& reference_set);
double igd_plus(const PointSet& points, const PointSet& reference_set);
double epsilon(const PointSet& points, const PointSet& reference_set);
double r2(const PointSet& points, const PointSet& weights, PointView utopian);
double nr2(const PointSet& points, const PointSet& weights, PointView ref);
double s_energy(const PointSet& points, double exponent);

/// Raw value of `spec` on `points`, without counting.
double indicator_value(const IndicatorSpec& spec, const PointSet& points);

/// Dispatches on spec.kind and increments `counter` by exactly one.
ScoredValue evaluate(const IndicatorSpec& spec, const PointSet& points, EvaluationCounter& counter);

/// `count` weight vectors on the unit simplex: the largest Das-Dennis lattice
/// that fits, topped up with seeded uniform simplex samples.
PointSet make_weight_vectors(std::size_t dim, std::size_t count, std::uint64_t seed);

namespace detail {

// Per-reference costs shared by the batch indicators and the incremental
// swap evaluator so that both produce bit-identical sums.
double igd_cost(const double* z, const double* p, std::size_t dim) noexcept;
double igd_plus_cost(const double* z, const double* p, std::size_t dim) noexcept;
double epsilon_cost(const double* z, const double* p, std::size_t dim) noexcept;
double r2_cost(const double* w, const double* p, const double* utopian, std::size_t dim) noexcept;
// Negated achievement value so that every reference family is a minimum.
double nr2_cost(const double* w, const double* p, const double* ref, std::size_t dim) noexcept;
double nr2_term(double min_cost, std::size_t dim) noexcept;
double energy_pair(const double* a, const double* b, std::size_t dim, double exponent);

}  // namespace detail

}  // namespace issp

#endif  // ISSP_INDICATORS_HPP
