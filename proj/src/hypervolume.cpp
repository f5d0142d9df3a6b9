#include "issp/hypervolume.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace issp {

namespace {

double box_volume(const double* p, const double* ref, std::size_t dim) {
  double v = 1.0;
  for (std::size_t j = 0; j < dim; ++j) {
    v *= ref[j] - p[j];
  }
  return v;
}

bool below_ref(const double* p, const double* ref, std::size_t dim) {
  for (std::size_t j = 0; j < dim; ++j) {
    if (!(p[j] < ref[j])) {
      return false;
    }
  }
  return true;
}

bool weakly_dominates_raw(const double* a, const double* b, std::size_t dim) {
  for (std::size_t j = 0; j < dim; ++j) {
    if (a[j] > b[j]) {
      return false;
    }
  }
  return true;
}

}  // namespace

HypervolumeEngine::HypervolumeEngine(std::size_t dim)
    : dim_(dim), buffers_(dim), sorted_(dim), order_(dim) {
  if (dim < 2) {
    throw std::invalid_argument("hypervolume needs at least 2 objectives");
  }
}

std::vector<double>& HypervolumeEngine::level_buffer(std::size_t level, std::size_t size) {
  auto& buf = buffers_[level];
  if (buf.size() < size) {
    buf.resize(size);
  }
  return buf;
}

std::size_t HypervolumeEngine::keep_nondominated(std::vector<double>& rows, std::size_t m,
                                                 std::size_t dim) {
  // A weak dominator never has a larger coordinate sum, so after sorting by
  // sum each row only needs checking against the rows already kept. Ties in
  // the sum with weak dominance mean duplicates, which are dropped as well.
  if (m < 2) {
    return m;
  }
  const double* base = rows.data();
  auto& keys = nd_keys_;
  keys.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < dim; ++j) {
      sum += base[i * dim + j];
    }
    keys[i] = {sum, i};
  }
  std::sort(keys.begin(), keys.end());
  auto& out = nd_rows_;
  out.resize(m * dim);
  std::size_t kept = 0;
  for (const auto& key : keys) {
    const double* cand = base + key.second * dim;
    bool dominated = false;
    for (std::size_t j = 0; j < kept; ++j) {
      if (weakly_dominates_raw(out.data() + j * dim, cand, dim)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) {
      std::copy_n(cand, dim, out.data() + kept * dim);
      ++kept;
    }
  }
  std::copy_n(out.data(), kept * dim, rows.data());
  return kept;
}

double HypervolumeEngine::sweep_2d(const double* rows, std::size_t m) {
  pairs_.resize(2 * m);
  std::copy_n(rows, 2 * m, pairs_.data());
  auto& order = order_2d_;
  order.resize(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (pairs_[2 * a] != pairs_[2 * b]) {
      return pairs_[2 * a] < pairs_[2 * b];
    }
    return pairs_[2 * a + 1] < pairs_[2 * b + 1];
  });
  double area = 0.0;
  double floor_y = ref_[1];
  for (std::size_t idx : order) {
    const double x = pairs_[2 * idx];
    const double y = pairs_[2 * idx + 1];
    if (y < floor_y) {
      area += (ref_[0] - x) * (floor_y - y);
      floor_y = y;
    }
  }
  return area;
}

double HypervolumeEngine::sweep_3d(const double* rows, std::size_t m) {
  // Rows in increasing third coordinate; the 2D staircase of the rows seen so
  // far is extruded up to the next row. Dominated rows never change the
  // staircase, so no prior filtering is needed.
  auto& order = order_2d_;
  order.resize(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double* x = rows + a * 3;
    const double* y = rows + b * 3;
    if (x[2] != y[2]) {
      return x[2] < y[2];
    }
    if (x[0] != y[0]) {
      return x[0] < y[0];
    }
    return x[1] < y[1];
  });
  auto& stair = pairs_;  // (x, y) with x increasing, y decreasing
  stair.clear();
  double area = 0.0;
  double volume = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double* p = rows + order[i] * 3;
    const double x = p[0];
    const double y = p[1];
    // First staircase step with step.x > x; the one before it (if any) is
    // the only step that can dominate p.
    std::size_t pos = 0;
    const std::size_t steps = stair.size() / 2;
    while (pos < steps && stair[2 * pos] <= x) {
      ++pos;
    }
    if (!(pos > 0 && stair[2 * (pos - 1) + 1] <= y)) {
      // Remove steps p weakly dominates, starting at pos (or pos - 1 on an
      // equal x).
      std::size_t first = pos;
      if (first > 0 && stair[2 * (first - 1)] == x) {
        --first;
      }
      std::size_t last = first;
      while (last < steps && stair[2 * last + 1] >= y) {
        ++last;
      }
      stair.erase(stair.begin() + static_cast<std::ptrdiff_t>(2 * first),
                  stair.begin() + static_cast<std::ptrdiff_t>(2 * last));
      stair.insert(stair.begin() + static_cast<std::ptrdiff_t>(2 * first), {x, y});
      area = 0.0;
      const std::size_t count = stair.size() / 2;
      for (std::size_t j = 0; j < count; ++j) {
        const double next_x = j + 1 < count ? stair[2 * (j + 1)] : ref_[0];
        area += (next_x - stair[2 * j]) * (ref_[1] - stair[2 * j + 1]);
      }
    }
    const double next_z = i + 1 < m ? rows[order[i + 1] * 3 + 2] : ref_[2];
    volume += area * (next_z - p[2]);
  }
  return volume;
}

double HypervolumeEngine::recurse(std::size_t level, std::size_t m, std::size_t dim) {
  if (m == 0) {
    return 0.0;
  }
  const double* rows = buffers_[level].data();
  if (m == 1) {
    return box_volume(rows, ref_, dim);
  }
  if (dim == 2) {
    return sweep_2d(rows, m);
  }
  if (dim == 3) {
    return sweep_3d(rows, m);
  }

  const std::size_t last = dim - 1;
  auto& order = order_[level];
  order.resize(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return rows[a * dim + last] > rows[b * dim + last];
  });
  auto& sorted = sorted_[level];
  sorted.resize(m * dim);
  for (std::size_t i = 0; i < m; ++i) {
    std::copy_n(rows + order[i] * dim, dim, sorted.data() + i * dim);
  }

  double total = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double* p = sorted.data() + k * dim;
    const double height = ref_[last] - p[last];
    const double base = box_volume(p, ref_, last);
    const std::size_t rest = m - k - 1;
    if (rest == 0) {
      total += height * base;
      continue;
    }
    auto& next = level_buffer(level + 1, rest * last);
    double* out = next.data();
    for (std::size_t q = k + 1; q < m; ++q) {
      const double* other = sorted.data() + q * dim;
      for (std::size_t j = 0; j < last; ++j) {
        *out++ = std::max(p[j], other[j]);
      }
    }
    const std::size_t m2 = last > 3 ? keep_nondominated(next, rest, last) : rest;
    total += height * (base - recurse(level + 1, m2, last));
  }
  return total;
}

double HypervolumeEngine::volume(std::span<const double> rows, PointView ref) {
  if (ref.size() != dim_) {
    throw std::invalid_argument("reference point dimension mismatch");
  }
  if (rows.size() % dim_ != 0) {
    throw std::invalid_argument("row buffer is not a multiple of the dimension");
  }
  ref_ = ref.data();
  const std::size_t m = rows.size() / dim_;
  auto& buf = level_buffer(0, m * dim_);
  std::size_t used = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double* p = rows.data() + i * dim_;
    if (below_ref(p, ref_, dim_)) {
      std::copy_n(p, dim_, buf.data() + used * dim_);
      ++used;
    }
  }
  const std::size_t kept = keep_nondominated(buf, used, dim_);
  return recurse(0, kept, dim_);
}

std::optional<double> HypervolumeEngine::contribution_above(PointView p,
                                                            std::span<const double> others,
                                                            PointView ref, double threshold) {
  if (ref.size() != dim_ || p.size() != dim_) {
    throw std::invalid_argument("dimension mismatch in hypervolume contribution");
  }
  ref_ = ref.data();
  if (!below_ref(p.data(), ref_, dim_)) {
    return 0.0 > threshold ? std::optional<double>(0.0) : std::nullopt;
  }
  const double box = box_volume(p.data(), ref_, dim_);
  const std::size_t m = others.size() / dim_;
  auto& buf = level_buffer(0, m * dim_);
  std::size_t used = 0;
  // Track the three largest limit boxes; the volume of their union is a
  // lower bound on the limit set's volume.
  double top_v[3] = {0.0, 0.0, 0.0};
  std::size_t top_i[3] = {0, 0, 0};
  for (std::size_t i = 0; i < m; ++i) {
    const double* q = others.data() + i * dim_;
    if (!below_ref(q, ref_, dim_)) {
      continue;
    }
    double* out = buf.data() + used * dim_;
    double v = 1.0;
    for (std::size_t j = 0; j < dim_; ++j) {
      out[j] = std::max(p[j], q[j]);
      v *= ref_[j] - out[j];
    }
    if (v > top_v[2]) {
      std::size_t at = 2;
      while (at > 0 && v > top_v[at - 1]) {
        top_v[at] = top_v[at - 1];
        top_i[at] = top_i[at - 1];
        --at;
      }
      top_v[at] = v;
      top_i[at] = used;
    }
    ++used;
  }
  if (box - top_v[0] <= threshold) {
    return std::nullopt;
  }
  if (used >= 2) {
    const double* a = buf.data() + top_i[0] * dim_;
    const double* b = buf.data() + top_i[1] * dim_;
    auto joint = [&](const double* x, const double* y) {
      double v = 1.0;
      for (std::size_t j = 0; j < dim_; ++j) {
        v *= ref_[j] - std::max(x[j], y[j]);
      }
      return v;
    };
    double covered = top_v[0] + top_v[1] - joint(a, b);
    if (used >= 3) {
      const double* c = buf.data() + top_i[2] * dim_;
      double v = 1.0;
      for (std::size_t j = 0; j < dim_; ++j) {
        v *= ref_[j] - std::max(std::max(a[j], b[j]), c[j]);
      }
      covered += top_v[2] - joint(a, c) - joint(b, c) + v;
    }
    // The union bound is only compared, never returned, so rounding in it
    // cannot change a reported contribution; the margin keeps it a safe
    // lower bound under rounding.
    if (box - covered * (1.0 - 1e-12) <= threshold) {
      return std::nullopt;
    }
  }
  const std::size_t kept = keep_nondominated(buf, used, dim_);
  return box - recurse(0, kept, dim_);
}

double HypervolumeEngine::contribution(PointView p, std::span<const double> others,
                                       PointView ref) {
  constexpr double kNoThreshold = -1.0;
  return *contribution_above(p, others, ref, kNoThreshold);
}

}  // namespace issp
