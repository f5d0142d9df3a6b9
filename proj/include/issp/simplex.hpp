// Point designs on the unit simplex.

#ifndef ISSP_SIMPLEX_HPP
#define ISSP_SIMPLEX_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "issp/geometry.hpp"

namespace issp {

/// Number of Das-Dennis lattice points with `divisions` steps per axis.
std::size_t lattice_size(std::size_t dim, std::size_t divisions);

/// Largest division count whose lattice has at most `count` points (0 if even
/// the vertex lattice is too large).
std::size_t lattice_divisions_for(std::size_t dim, std::size_t count);

/// All lattice points; the first coordinate varies slowest, in decreasing order.
PointSet simplex_lattice(std::size_t dim, std::size_t divisions);

/// One uniformly distributed point on the simplex (normalized exponential
/// spacings).
std::vector<double> sample_simplex(std::size_t dim, std::mt19937_64& rng);

/// Lattice of the largest size <= count, then uniform samples up to `count`.
PointSet lattice_with_fill(std::size_t dim, std::size_t count, std::uint64_t seed);

}  // namespace issp

#endif  // ISSP_SIMPLEX_HPP
