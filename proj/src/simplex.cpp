#include "issp/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace issp {

std::size_t lattice_size(std::size_t dim, std::size_t divisions) {
  // C(divisions + dim - 1, dim - 1), saturating.
  const std::size_t top = divisions + dim - 1;
  std::size_t k = dim - 1;
  if (k > top - k) {
    k = top - k;
  }
  std::size_t result = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    const std::size_t num = top - k + i;
    if (result > std::numeric_limits<std::size_t>::max() / num) {
      return std::numeric_limits<std::size_t>::max();
    }
    result = result * num / i;
  }
  return result;
}

std::size_t lattice_divisions_for(std::size_t dim, std::size_t count) {
  std::size_t h = 0;
  while (lattice_size(dim, h + 1) <= count) {
    ++h;
  }
  return h;
}

PointSet simplex_lattice(std::size_t dim, std::size_t divisions) {
  if (dim < 2) {
    throw std::invalid_argument("simplex lattice needs dim >= 2");
  }
  PointSet out(dim);
  if (divisions == 0) {
    return out;
  }
  out.reserve(lattice_size(dim, divisions));
  std::vector<std::size_t> parts(dim, 0);
  std::vector<double> row(dim);
  const double h = static_cast<double>(divisions);
  // Depth-first enumeration of compositions, largest first component first.
  auto emit = [&](auto&& self, std::size_t axis, std::size_t remaining) -> void {
    if (axis + 1 == dim) {
      parts[axis] = remaining;
      for (std::size_t j = 0; j < dim; ++j) {
        row[j] = static_cast<double>(parts[j]) / h;
      }
      out.push_back(row);
      return;
    }
    for (std::size_t v = remaining + 1; v-- > 0;) {
      parts[axis] = v;
      self(self, axis + 1, remaining - v);
    }
  };
  emit(emit, 0, divisions);
  return out;
}

std::vector<double> sample_simplex(std::size_t dim, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> x(dim);
  double sum = 0.0;
  for (auto& v : x) {
    v = -std::log1p(-unit(rng));
    sum += v;
  }
  if (sum <= 0.0) {
    // Every draw was exactly zero; fall back to the barycentre.
    for (auto& v : x) {
      v = 1.0 / static_cast<double>(dim);
    }
    return x;
  }
  for (auto& v : x) {
    v /= sum;
  }
  return x;
}

PointSet lattice_with_fill(std::size_t dim, std::size_t count, std::uint64_t seed) {
  const std::size_t h = lattice_divisions_for(dim, count);
  PointSet out = simplex_lattice(dim, h);
  std::mt19937_64 rng(seed);
  while (out.size() < count) {
    out.push_back(sample_simplex(dim, rng));
  }
  return out;
}

}  // namespace issp
