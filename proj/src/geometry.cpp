#include "issp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace issp {

namespace {

void check_coords(std::span<const double> coords) {
  for (double c : coords) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("point coordinates must be finite");
    }
  }
}

void check_same_dim(PointView p, PointView q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(p.size()) + " vs " +
                                std::to_string(q.size()));
  }
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.size() < 2) {
    throw std::invalid_argument("a point needs at least 2 objectives");
  }
  check_coords(coords_);
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

Point Point::filled(std::size_t dim, double value) {
  return Point(std::vector<double>(dim, value));
}

PointSet::PointSet(std::size_t dim) : dim_(dim) {
  if (dim < 2) {
    throw std::invalid_argument("a point set needs at least 2 objectives");
  }
}

PointSet::PointSet(std::size_t dim, std::vector<double> flat) : dim_(dim), flat_(std::move(flat)) {
  if (dim < 2) {
    throw std::invalid_argument("a point set needs at least 2 objectives");
  }
  if (flat_.size() % dim != 0) {
    throw std::invalid_argument("flat coordinate buffer is not a multiple of the dimension");
  }
  check_coords(flat_);
}

PointSet::PointSet(std::initializer_list<std::initializer_list<double>> rows) {
  if (rows.size() == 0) {
    return;
  }
  dim_ = rows.begin()->size();
  if (dim_ < 2) {
    throw std::invalid_argument("a point set needs at least 2 objectives");
  }
  flat_.reserve(rows.size() * dim_);
  for (const auto& row : rows) {
    if (row.size() != dim_) {
      throw std::invalid_argument("ragged rows in point set");
    }
    flat_.insert(flat_.end(), row.begin(), row.end());
  }
  check_coords(flat_);
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) {
    throw std::invalid_argument("cannot infer dimension of an empty row list");
  }
  PointSet set(rows.front().size());
  set.reserve(rows.size());
  for (const auto& row : rows) {
    set.push_back(row);
  }
  return set;
}

Point PointSet::point(std::size_t i) const {
  auto row = (*this)[i];
  return Point(std::vector<double>(row.begin(), row.end()));
}

void PointSet::push_back(PointView p) {
  if (dim_ == 0) {
    throw std::invalid_argument("point set has no dimension");
  }
  if (p.size() != dim_) {
    throw std::invalid_argument("dimension mismatch on push_back");
  }
  check_coords(p);
  flat_.insert(flat_.end(), p.begin(), p.end());
  nondominated_ = false;
}

PointSet PointSet::select(std::span<const std::size_t> indices) const {
  PointSet out(dim_);
  out.flat_.resize(indices.size() * dim_);
  double* dst = out.flat_.data();
  for (std::size_t idx : indices) {
    if (idx >= size()) {
      throw std::out_of_range("point index out of range");
    }
    std::memcpy(dst, flat_.data() + idx * dim_, dim_ * sizeof(double));
    dst += dim_;
  }
  return out;
}

bool dominates(PointView p, PointView q) {
  check_same_dim(p, q);
  bool strict = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > q[i]) {
      return false;
    }
    strict = strict || p[i] < q[i];
  }
  return strict;
}

bool weakly_dominates(PointView p, PointView q) {
  check_same_dim(p, q);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > q[i]) {
      return false;
    }
  }
  return true;
}

double squared_dist(PointView p, PointView q) noexcept {
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double diff = p[i] - q[i];
    acc += diff * diff;
  }
  return acc;
}

double euclidean_dist(PointView p, PointView q) {
  check_same_dim(p, q);
  return std::sqrt(squared_dist(p, q));
}

std::vector<std::size_t> nondominated_filter(const PointSet& points) {
  // Dominance is transitive, so comparing each candidate against the current
  // front is enough; a point entering the front evicts members it dominates.
  const std::size_t n = points.size();
  std::vector<std::size_t> front;
  for (std::size_t i = 0; i < n; ++i) {
    bool dominated = false;
    for (std::size_t j : front) {
      if (dominates(points[j], points[i])) {
        dominated = true;
        break;
      }
    }
    if (dominated) {
      continue;
    }
    std::erase_if(front, [&](std::size_t j) { return dominates(points[i], points[j]); });
    front.push_back(i);
  }
  std::sort(front.begin(), front.end());
  return front;
}

std::uint64_t content_hash(const PointSet& points) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ULL;
    }
  };
  const std::uint64_t dim = points.dim();
  mix(&dim, sizeof(dim));
  mix(points.flat().data(), points.flat().size() * sizeof(double));
  return h;
}

PointSet read_point_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open point file: " + path.string());
  }
  std::vector<double> flat;
  std::size_t dim = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') {
      continue;
    }
    std::istringstream row(line);
    std::size_t count = 0;
    std::string token;
    while (row >> token) {
      std::size_t used = 0;
      double value = 0.0;
      try {
        value = std::stod(token, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != token.size()) {
        throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                                 ": not a number: " + token);
      }
      flat.push_back(value);
      ++count;
    }
    if (dim == 0) {
      dim = count;
    } else if (count != dim) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(dim) + " values, found " + std::to_string(count));
    }
  }
  if (dim == 0) {
    throw std::runtime_error("point file contains no points: " + path.string());
  }
  return PointSet(dim, std::move(flat));
}

void write_point_file(const std::filesystem::path& path, const PointSet& points) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write point file: " + path.string());
  }
  char buf[32];
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto row = points[i];
    for (std::size_t j = 0; j < row.size(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", row[j]);
      if (j > 0) {
        out << ' ';
      }
      out << buf;
    }
    out << '\n';
  }
  if (!out) {
    throw std::runtime_error("write failed: " + path.string());
  }
}

}  // namespace issp
