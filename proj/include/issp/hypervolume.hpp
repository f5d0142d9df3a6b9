// Exact hypervolume by WFG-style exclusive-volume recursion.
//
// Points are sorted by their last objective in decreasing order, so every
// limit set of a point shares that point's last coordinate and the recursion
// drops one dimension per level. Two and three objectives use sweep base cases.

#ifndef ISSP_HYPERVOLUME_HPP
#define ISSP_HYPERVOLUME_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "issp/geometry.hpp"

namespace issp {

/// Reusable scratch space for hypervolume computations of a fixed dimension.
/// Not thread-safe; use one engine per thread.
class HypervolumeEngine {
 public:
  explicit HypervolumeEngine(std::size_t dim);

  std::size_t dim() const noexcept { return dim_; }

  /// Volume dominated by `rows` (row-major, m x dim) and bounded by `ref`.
  /// Rows that do not strictly dominate `ref` contribute nothing.
  double volume(std::span<const double> rows, PointView ref);

  /// Volume dominated by `p` and by none of `others`.
  double contribution(PointView p, std::span<const double> others, PointView ref);

  /// As `contribution`, but returns nullopt without finishing the computation
  /// when a single-neighbour upper bound already shows the result is
  /// <= `threshold`.
  std::optional<double> contribution_above(PointView p, std::span<const double> others,
                                           PointView ref, double threshold);

 private:
  double recurse(std::size_t level, std::size_t m, std::size_t dim);
  double sweep_2d(const double* rows, std::size_t m);
  double sweep_3d(const double* rows, std::size_t m);
  std::size_t keep_nondominated(std::vector<double>& rows, std::size_t m, std::size_t dim);
  std::vector<double>& level_buffer(std::size_t level, std::size_t size);

  std::size_t dim_;
  const double* ref_ = nullptr;
  std::vector<std::vector<double>> buffers_;
  std::vector<std::vector<double>> sorted_;
  std::vector<std::vector<std::size_t>> order_;
  std::vector<std::size_t> order_2d_;
  std::vector<double> pairs_;
  std::vector<std::pair<double, std::size_t>> nd_keys_;
  std::vector<double> nd_rows_;
};

}  // namespace issp

#endif  // ISSP_HYPERVOLUME_HPP
