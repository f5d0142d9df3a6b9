#include "issp/instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "issp/simplex.hpp"

namespace issp {

namespace {

struct FrontEntry {
  FrontKind kind;
  std::string_view name;
};

constexpr FrontEntry kFrontNames[] = {
    {FrontKind::Linear, "linear"},         {FrontKind::Concave, "concave"},
    {FrontKind::Convex, "convex"},         {FrontKind::InvLinear, "inv-linear"},
    {FrontKind::InvConcave, "inv-concave"}, {FrontKind::InvConvex, "inv-convex"},
    {FrontKind::Dtlz7, "dtlz7"}};

double dtlz7_gain(double f) { return f * (1.0 + std::sin(3.0 * std::numbers::pi * f)); }

// Per-objective rescale to [0, 1]; constant objectives map to 0.
void normalize_unit_box(PointSet& points) {
  const std::size_t n = points.size();
  const std::size_t d = points.dim();
  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] = std::min(lo[j], points[i][j]);
      hi[j] = std::max(hi[j], points[i][j]);
    }
  }
  std::vector<double> flat(points.flat().begin(), points.flat().end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double span = hi[j] - lo[j];
      double& v = flat[i * d + j];
      v = span > 0.0 ? std::clamp((v - lo[j]) / span, 0.0, 1.0) : 0.0;
    }
  }
  points = PointSet(d, std::move(flat));
}

// Projected descent on the Riesz s-energy of the non-vertex samples.
void polish_energy(std::vector<double>& flat, std::size_t n, std::size_t d,
                   std::size_t fixed_prefix) {
  const double s = static_cast<double>(d) + 1.0;
  constexpr int kIterations = 30;
  std::vector<double> grad(n * d);
  // Typical nearest spacing on the simplex sets the step scale.
  const double spacing = std::pow(1.0 / static_cast<double>(n), 1.0 / static_cast<double>(d - 1));
  for (int it = 0; it < kIterations; ++it) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double sq = 0.0;
        for (std::size_t c = 0; c < d; ++c) {
          const double diff = flat[i * d + c] - flat[j * d + c];
          sq += diff * diff;
        }
        sq = std::max(sq, 1e-24);
        // Repulsive force magnitude of |x|^-s is s |x|^-(s+2) x.
        const double w = s * std::pow(sq, -(s + 2.0) / 2.0);
        for (std::size_t c = 0; c < d; ++c) {
          const double diff = flat[i * d + c] - flat[j * d + c];
          grad[i * d + c] += w * diff;
          grad[j * d + c] -= w * diff;
        }
      }
    }
    const double step = 0.1 * spacing * (1.0 - static_cast<double>(it) / kIterations);
    for (std::size_t i = fixed_prefix; i < n; ++i) {
      double* g = grad.data() + i * d;
      double mean = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        mean += g[c];
      }
      mean /= static_cast<double>(d);
      double norm = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        g[c] -= mean;
        norm += g[c] * g[c];
      }
      norm = std::sqrt(norm);
      if (norm == 0.0) {
        continue;
      }
      double sum = 0.0;
      for (std::size_t c = 0; c < d; ++c) {
        double& v = flat[i * d + c];
        v = std::max(0.0, v + step * g[c] / norm);
        sum += v;
      }
      for (std::size_t c = 0; c < d; ++c) {
        flat[i * d + c] /= sum;
      }
    }
  }
}

// Pareto-optimal values of one DTLZ7 axis: f where the gain exceeds the gain
// at every smaller f. Returned as closed intervals.
std::vector<std::pair<double, double>> dtlz7_axis_intervals() {
  constexpr std::size_t kSamples = 200000;
  std::vector<std::pair<double, double>> intervals;
  double record = -std::numeric_limits<double>::infinity();
  bool open = false;
  for (std::size_t i = 0; i <= kSamples; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(kSamples);
    const double g = dtlz7_gain(f);
    if (g > record) {
      record = g;
      if (!open) {
        intervals.emplace_back(f, f);
        open = true;
      }
      intervals.back().second = f;
    } else {
      open = false;
    }
  }
  return intervals;
}

// m values spread evenly over the concatenated intervals, endpoints included.
std::vector<double> dtlz7_axis_values(std::size_t m) {
  const auto intervals = dtlz7_axis_intervals();
  double total = 0.0;
  for (const auto& [a, b] : intervals) {
    total += b - a;
  }
  std::vector<double> values;
  values.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    double pos = total * static_cast<double>(j) / static_cast<double>(m - 1);
    for (std::size_t iv = 0; iv < intervals.size(); ++iv) {
      const double len = intervals[iv].second - intervals[iv].first;
      if (pos <= len || iv + 1 == intervals.size()) {
        values.push_back(std::min(intervals[iv].first + pos, intervals[iv].second));
        break;
      }
      pos -= len;
    }
  }
  return values;
}

}  // namespace

std::string_view front_name(FrontKind kind) noexcept {
  for (const auto& e : kFrontNames) {
    if (e.kind == kind) {
      return e.name;
    }
  }
  return "unknown";
}

FrontKind parse_front(std::string_view name) {
  for (const auto& e : kFrontNames) {
    if (e.name == name) {
      return e.kind;
    }
  }
  throw std::invalid_argument("unknown front '" + std::string(name) + "'");
}

PointSet gen_linear(std::size_t n, std::size_t d, std::uint64_t seed, bool polish) {
  if (d < 2) {
    throw std::invalid_argument("gen_linear needs d >= 2");
  }
  if (n < d) {
    throw std::invalid_argument("gen_linear needs n >= d");
  }
  std::vector<double> flat(n * d, 0.0);
  for (std::size_t v = 0; v < d; ++v) {
    flat[v * d + v] = 1.0;
  }
  std::mt19937_64 rng(seed);
  for (std::size_t i = d; i < n; ++i) {
    const auto x = sample_simplex(d, rng);
    std::copy(x.begin(), x.end(), flat.begin() + static_cast<std::ptrdiff_t>(i * d));
  }
  if (polish) {
    polish_energy(flat, n, d, d);
  }
  PointSet out(d, std::move(flat));
  out.mark_nondominated();
  return out;
}

PointSet transform_front(const PointSet& simplex_points, FrontKind kind) {
  if (kind == FrontKind::Dtlz7) {
    throw std::invalid_argument("dtlz7 is not a simplex transform; use gen_dtlz7");
  }
  const std::size_t n = simplex_points.size();
  const std::size_t d = simplex_points.dim();
  std::vector<double> flat(simplex_points.flat().begin(), simplex_points.flat().end());
  const bool inverted =
      kind == FrontKind::InvLinear || kind == FrontKind::InvConcave || kind == FrontKind::InvConvex;
  const bool spherical = kind == FrontKind::Concave || kind == FrontKind::Convex ||
                         kind == FrontKind::InvConcave || kind == FrontKind::InvConvex;
  const bool squared = kind == FrontKind::Convex || kind == FrontKind::InvConvex;
  for (std::size_t i = 0; i < n; ++i) {
    double* row = flat.data() + i * d;
    if (spherical) {
      double norm = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        norm += row[j] * row[j];
      }
      norm = std::sqrt(norm);
      for (std::size_t j = 0; j < d; ++j) {
        row[j] /= norm;
      }
    }
    if (squared) {
      for (std::size_t j = 0; j < d; ++j) {
        row[j] *= row[j];
      }
    }
    if (inverted) {
      for (std::size_t j = 0; j < d; ++j) {
        row[j] = 1.0 - row[j];
      }
    }
  }
  PointSet out(d, std::move(flat));
  if (inverted) {
    normalize_unit_box(out);
  }
  out.mark_nondominated();
  return out;
}

PointSet gen_dtlz7(std::size_t m_per_axis, std::size_t d) {
  if (m_per_axis < 2 || d < 2) {
    throw std::invalid_argument("gen_dtlz7 needs m_per_axis >= 2 and d >= 2");
  }
  const auto axis = dtlz7_axis_values(m_per_axis);
  std::vector<double> gains(axis.size());
  std::transform(axis.begin(), axis.end(), gains.begin(), dtlz7_gain);
  std::size_t total = 1;
  for (std::size_t j = 0; j + 1 < d; ++j) {
    total *= m_per_axis;
  }
  PointSet out(d);
  out.reserve(total);
  std::vector<std::size_t> digit(d - 1, 0);
  std::vector<double> row(d);
  const double top = 2.0 * static_cast<double>(d) - 2.0;
  for (std::size_t c = 0; c < total; ++c) {
    double last = top;
    for (std::size_t j = 0; j + 1 < d; ++j) {
      row[j] = axis[digit[j]];
      last -= gains[digit[j]];
    }
    row[d - 1] = last;
    out.push_back(row);
    // Odometer increment, first axis slowest.
    for (std::size_t j = d - 1; j-- > 0;) {
      if (++digit[j] < m_per_axis) {
        break;
      }
      digit[j] = 0;
    }
  }
  normalize_unit_box(out);
  out.mark_nondominated();
  return out;
}

std::optional<std::size_t> dtlz7_axis_count(std::size_t n, std::size_t d) {
  if (d < 2 || n < 2) {
    return std::nullopt;
  }
  const auto guess = static_cast<std::size_t>(
      std::llround(std::pow(static_cast<double>(n), 1.0 / static_cast<double>(d - 1))));
  for (std::size_t m = guess > 1 ? guess - 1 : 1; m <= guess + 1; ++m) {
    std::size_t p = 1;
    for (std::size_t j = 0; j + 1 < d && p <= n; ++j) {
      p *= m;
    }
    if (p == n && m >= 2) {
      return m;
    }
  }
  return std::nullopt;
}

std::size_t InstanceConfig::point_count() const {
  if (d < 2) {
    throw std::invalid_argument("instance needs d >= 2");
  }
  if (front == FrontKind::Dtlz7) {
    std::size_t m = m_per_axis;
    if (m == 0) {
      auto derived = dtlz7_axis_count(n, d);
      if (!derived) {
        throw std::invalid_argument("dtlz7 needs n = m^(d-1); got n = " + std::to_string(n));
      }
      m = *derived;
    }
    if (m < 2) {
      throw std::invalid_argument("dtlz7 needs m_per_axis >= 2");
    }
    std::size_t p = 1;
    for (std::size_t j = 0; j + 1 < d; ++j) {
      p *= m;
    }
    if (n != 0 && n != p) {
      throw std::invalid_argument("dtlz7 n does not match m_per_axis^(d-1)");
    }
    return p;
  }
  if (n < 2 || n < d) {
    throw std::invalid_argument("instance needs n >= max(2, d)");
  }
  return n;
}

PointSet generate_instance(const InstanceConfig& config) {
  const std::size_t count = config.point_count();
  if (config.front == FrontKind::Dtlz7) {
    std::size_t m = config.m_per_axis != 0 ? config.m_per_axis : *dtlz7_axis_count(count, config.d);
    return gen_dtlz7(m, config.d);
  }
  PointSet base = gen_linear(count, config.d, config.seed, config.polish);
  if (config.front == FrontKind::Linear) {
    return base;
  }
  return transform_front(base, config.front);
}

LoadedPoints load_points(const std::filesystem::path& path, const std::optional<Point>& ideal,
                         const std::optional<Point>& nadir) {
  PointSet raw = read_point_file(path);
  if (raw.empty()) {
    throw std::runtime_error("point file '" + path.string() + "' has no points");
  }
  const std::size_t n = raw.size();
  const std::size_t d = raw.dim();
  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      lo[j] = std::min(lo[j], raw[i][j]);
      hi[j] = std::max(hi[j], raw[i][j]);
    }
  }
  if (ideal) {
    if (ideal->dim() != d) {
      throw std::invalid_argument("ideal point dimension does not match the file");
    }
    lo = ideal->coords();
  }
  if (nadir) {
    if (nadir->dim() != d) {
      throw std::invalid_argument("nadir point dimension does not match the file");
    }
    hi = nadir->coords();
  }
  for (std::size_t j = 0; j < d; ++j) {
    if (!(hi[j] > lo[j])) {
      throw std::invalid_argument("nadir must exceed ideal in objective " + std::to_string(j));
    }
  }
  std::vector<double> flat(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      flat[i * d + j] = (raw[i][j] - lo[j]) / (hi[j] - lo[j]);
    }
  }
  PointSet normalized(d, std::move(flat));
  const auto keep = nondominated_filter(normalized);
  LoadedPoints out;
  out.dominated_removed = n - keep.size();
  out.points = normalized.select(keep);
  out.points.mark_nondominated();
  return out;
}

void save_points(const std::filesystem::path& path, const PointSet& points) {
  write_point_file(path, points);
}

PointSet make_reference_set(FrontKind front, std::size_t m, std::size_t d, std::uint64_t seed) {
  if (d < 2 || m < d) {
    throw std::invalid_argument("reference set needs d >= 2 and m >= d");
  }
  if (front == FrontKind::Dtlz7) {
    const auto axis = static_cast<std::size_t>(
        std::llround(std::pow(static_cast<double>(m), 1.0 / static_cast<double>(d - 1))));
    return gen_dtlz7(std::max<std::size_t>(axis, 2), d);
  }
  // An exact lattice size gives the lattice itself; otherwise vertices plus
  // energy-spread samples, which avoid the shared coordinates of a partial
  // lattice.
  const std::size_t h = lattice_divisions_for(d, m);
  PointSet base = lattice_size(d, h) == m ? simplex_lattice(d, h) : gen_linear(m, d, seed, true);
  base.mark_nondominated();
  if (front == FrontKind::Linear) {
    return base;
  }
  return transform_front(base, front);
}

IndicatorSpec default_spec(IndicatorKind kind, FrontKind front, std::size_t d,
                           const ReferenceDefaults& defaults) {
  const Point ref = Point::filled(d, defaults.ref_coordinate);
  switch (kind) {
    case IndicatorKind::HV:
      return IndicatorSpec::hypervolume(ref);
    case IndicatorKind::IGD:
      return IndicatorSpec::igd(make_reference_set(front, defaults.reference_set_size, d, defaults.seed));
    case IndicatorKind::IGDPlus:
      return IndicatorSpec::igd_plus(
          make_reference_set(front, defaults.reference_set_size, d, defaults.seed));
    case IndicatorKind::Epsilon:
      return IndicatorSpec::epsilon(
          make_reference_set(front, defaults.reference_set_size, d, defaults.seed));
    case IndicatorKind::R2:
      return IndicatorSpec::r2(make_weight_vectors(d, defaults.weight_count, defaults.seed));
    case IndicatorKind::NR2:
      return IndicatorSpec::nr2(make_weight_vectors(d, defaults.weight_count, defaults.seed), ref);
    case IndicatorKind::SEnergy:
      return IndicatorSpec::s_energy(defaults.energy_exponent);
  }
  throw std::invalid_argument("unknown indicator kind");
}

}  // namespace issp
