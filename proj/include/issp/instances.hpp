// Benchmark point sets: simplex-based fronts and their transforms, a
// discontinuous DTLZ7-style front, external point files, and the matching
// reference data for the indicators.

#ifndef ISSP_INSTANCES_HPP
#define ISSP_INSTANCES_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "issp/geometry.hpp"
#include "issp/indicators.hpp"

namespace issp {

enum class FrontKind { Linear, Concave, Convex, InvLinear, InvConcave, InvConvex, Dtlz7 };

inline constexpr FrontKind kAllFronts[] = {FrontKind::Linear,    FrontKind::Concave,
                                           FrontKind::Convex,    FrontKind::InvLinear,
                                           FrontKind::InvConcave, FrontKind::InvConvex,
                                           FrontKind::Dtlz7};

/// linear, concave, convex, inv-linear, inv-concave, inv-convex, dtlz7.
std::string_view front_name(FrontKind kind) noexcept;
FrontKind parse_front(std::string_view name);

/// The d simplex vertices followed by n - d uniform simplex samples. With
/// `polish` the samples are spread further by a few projected s-energy
/// descent steps.
PointSet gen_linear(std::size_t n, std::size_t d, std::uint64_t seed, bool polish = false);

/// Maps points of the unit simplex onto another front family. Throws
/// std::invalid_argument for dtlz7, which has its own generator.
PointSet transform_front(const PointSet& simplex_points, FrontKind kind);

/// m_per_axis^(d-1) points of the DTLZ7 front, min-max normalized.
PointSet gen_dtlz7(std::size_t m_per_axis, std::size_t d);

/// Smallest m with m^(d-1) == n, or nullopt if n is not such a power.
std::optional<std::size_t> dtlz7_axis_count(std::size_t n, std::size_t d);

struct InstanceConfig {
  FrontKind front = FrontKind::Linear;
  std::size_t n = 0;           // ignored for dtlz7 when m_per_axis is set
  std::size_t m_per_axis = 0;  // dtlz7 only
  std::size_t d = 0;
  std::uint64_t seed = 0;
  bool polish = false;

  /// Number of points the config produces; throws if it is invalid.
  std::size_t point_count() const;
};

PointSet generate_instance(const InstanceConfig& config);

struct LoadedPoints {
  PointSet points;
  std::size_t dominated_removed = 0;
};

/// Reads a point file and normalizes it as (p - ideal) / (nadir - ideal).
/// Missing ideal/nadir default to the per-objective min/max of the file.
/// Dominated rows are removed and counted.
LoadedPoints load_points(const std::filesystem::path& path,
                         const std::optional<Point>& ideal = std::nullopt,
                         const std::optional<Point>& nadir = std::nullopt);

void save_points(const std::filesystem::path& path, const PointSet& points);

/// m well-spread points on the given front family: the simplex lattice when m
/// is a lattice size, otherwise vertices plus energy-spread samples, mapped
/// like the instance. For dtlz7 the nearest attainable grid of
/// round(m^(1/(d-1)))^(d-1) points.
PointSet make_reference_set(FrontKind front, std::size_t m, std::size_t d, std::uint64_t seed);

/// Reference data used throughout the experiments: r = (1.1, ..., 1.1),
/// |Z| = |W| = 1000 and the s-energy exponent d + 1.
struct ReferenceDefaults {
  double ref_coordinate = 1.1;
  std::size_t reference_set_size = 1000;
  std::size_t weight_count = 1000;
  double energy_exponent = 0.0;
  std::uint64_t seed = 0;
};

IndicatorSpec default_spec(IndicatorKind kind, FrontKind front, std::size_t d,
                           const ReferenceDefaults& defaults = {});

}  // namespace issp

#endif  // ISSP_INSTANCES_HPP
