// Candidate lists restricting the swap partners of each point.

#ifndef ISSP_NEIGHBORHOODS_HPP
#define ISSP_NEIGHBORHOODS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "issp/geometry.hpp"

namespace issp {

enum class ListKind { Nearest, Random };

std::string_view list_kind_name(ListKind kind) noexcept;

/// For every point index i, an ordered list of l distinct indices other than i.
struct CandidateListSet {
  ListKind kind = ListKind::Nearest;
  std::size_t l = 0;
  std::size_t n = 0;
  std::uint64_t point_hash = 0;
  std::optional<std::uint64_t> seed;  // random lists only
  std::vector<std::vector<std::size_t>> lists;

  const std::vector<std::size_t>& operator[](std::size_t i) const { return lists[i]; }
  /// True when the lists were built over `points`.
  bool built_for(const PointSet& points) const;
};

/// The l nearest points of each point by Euclidean distance, nearest first;
/// equal distances are ordered by index. Throws unless 1 <= l <= n - 1.
CandidateListSet build_nearest_list(const PointSet& points, std::size_t l);

/// l points drawn uniformly without replacement from the others, per point.
CandidateListSet build_random_list(const PointSet& points, std::size_t l, std::uint64_t seed);

void save_lists(const std::filesystem::path& path, const CandidateListSet& lists);
CandidateListSet load_lists(const std::filesystem::path& path);

/// Loads the lists for (points, kind, l, seed) from `cache_dir` when present,
/// otherwise builds and stores them there.
CandidateListSet cached_lists(const std::filesystem::path& cache_dir, const PointSet& points,
                              ListKind kind, std::size_t l, std::uint64_t seed = 0);

}  // namespace issp

#endif  // ISSP_NEIGHBORHOODS_HPP
