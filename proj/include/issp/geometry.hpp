// Points, point sets, Pareto dominance and distances in objective space.
//
// All objectives are minimized. A PointSet stores its coordinates row-major in
// one contiguous buffer; rows are addressed by stable indices 0..n-1.

#ifndef ISSP_GEOMETRY_HPP
#define ISSP_GEOMETRY_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <span>
#include <vector>

namespace issp {

using PointView = std::span<const double>;

/// A single objective vector with d >= 2 finite coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  static Point filled(std::size_t dim, double value);

  std::size_t dim() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<double>& coords() const noexcept { return coords_; }
  PointView view() const noexcept { return coords_; }
  operator PointView() const noexcept { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<double> coords_;
};

/// Ordered collection of points of equal dimension.
///
/// Construction validates the dimension (d >= 2) and that every coordinate is
/// finite. The `nondominated` flag is informational: generators and loaders
/// set it after they have guaranteed mutual non-dominance.
class PointSet {
 public:
  PointSet() = default;
  explicit PointSet(std::size_t dim);
  PointSet(std::size_t dim, std::vector<double> flat);
  PointSet(std::initializer_list<std::initializer_list<double>> rows);

  static PointSet from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t size() const noexcept { return dim_ == 0 ? 0 : flat_.size() / dim_; }
  std::size_t dim() const noexcept { return dim_; }
  bool empty() const noexcept { return flat_.empty(); }

  PointView operator[](std::size_t i) const noexcept {
    return {flat_.data() + i * dim_, dim_};
  }
  Point point(std::size_t i) const;

  std::span<const double> flat() const noexcept { return flat_; }

  void push_back(PointView p);
  void reserve(std::size_t n) { flat_.reserve(n * dim_); }

  /// Rows at the given indices, in the given order.
  PointSet select(std::span<const std::size_t> indices) const;

  bool nondominated() const noexcept { return nondominated_; }
  void mark_nondominated(bool flag = true) noexcept { nondominated_ = flag; }

  friend bool operator==(const PointSet& a, const PointSet& b) {
    return a.dim_ == b.dim_ && a.flat_ == b.flat_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<double> flat_;
  bool nondominated_ = false;
};

bool dominates(PointView p, PointView q);
bool weakly_dominates(PointView p, PointView q);
double euclidean_dist(PointView p, PointView q);
double squared_dist(PointView p, PointView q) noexcept;

/// Indices of the points not dominated by any other point, in input order.
std::vector<std::size_t> nondominated_filter(const PointSet& points);

/// FNV-1a hash over dimension and coordinate bytes; stable across runs.
std::uint64_t content_hash(const PointSet& points);

/// Reads the shared point-file format: one point per line, whitespace
/// separated decimals, '#' comment lines and blank lines ignored.
PointSet read_point_file(const std::filesystem::path& path);

/// Writes with round-trip precision (17 significant digits).
void write_point_file(const std::filesystem::path& path, const PointSet& points);

}  // namespace issp

#endif  // ISSP_GEOMETRY_HPP
