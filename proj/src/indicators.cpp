#include "issp/indicators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "issp/hypervolume.hpp"
#include "issp/simplex.hpp"

namespace issp {

Orientation orientation_of(IndicatorKind kind) noexcept {
  switch (kind) {
    case IndicatorKind::HV:
    case IndicatorKind::NR2:
      return Orientation::Maximize;
    default:
      return Orientation::Minimize;
  }
}

std::string_view indicator_name(IndicatorKind kind) noexcept {
  switch (kind) {
    case IndicatorKind::HV: return "hv";
    case IndicatorKind::IGD: return "igd";
    case IndicatorKind::IGDPlus: return "igdp";
    case IndicatorKind::Epsilon: return "eps";
    case IndicatorKind::R2: return "r2";
    case IndicatorKind::NR2: return "nr2";
    case IndicatorKind::SEnergy: return "senergy";
  }
  return "?";
}

IndicatorKind parse_indicator(std::string_view name) {
  for (IndicatorKind kind : kAllIndicators) {
    if (indicator_name(kind) == name) {
      return kind;
    }
  }
  throw std::invalid_argument("unknown indicator: " + std::string(name));
}

namespace {

void require_dim(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + " has dimension " + std::to_string(got) +
                                ", expected " + std::to_string(want));
  }
}

void require_nonempty_set(const std::optional<PointSet>& set, std::size_t dim, const char* what) {
  if (!set || set->empty()) {
    throw std::invalid_argument(std::string(what) + " is required and must be nonempty");
  }
  require_dim(set->dim(), dim, what);
}

void require_weights(const std::optional<PointSet>& weights, std::size_t dim) {
  require_nonempty_set(weights, dim, "weight set");
  for (std::size_t i = 0; i < weights->size(); ++i) {
    double sum = 0.0;
    for (double w : (*weights)[i]) {
      if (w < 0.0) {
        throw std::invalid_argument("weight vectors must be nonnegative");
      }
      sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
      throw std::invalid_argument("weight vectors must sum to 1");
    }
  }
}

void require_points(const PointSet& points) {
  if (points.empty()) {
    throw std::invalid_argument("indicator is undefined on an empty point set");
  }
}

enum class Aggregate { Mean, Max, MeanNr2 };

template <typename Cost>
double reference_indicator(const PointSet& points, const PointSet& refs, Aggregate agg,
                           Cost&& cost) {
  require_points(points);
  require_dim(refs.dim(), points.dim(), "reference data");
  const std::size_t dim = points.dim();
  const std::size_t n = points.size();
  const double* pts = points.flat().data();
  double acc = agg == Aggregate::Max ? -std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t z = 0; z < refs.size(); ++z) {
    const double* ref = refs[z].data();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      best = std::min(best, cost(ref, pts + i * dim));
    }
    switch (agg) {
      case Aggregate::Mean: acc += best; break;
      case Aggregate::Max: acc = std::max(acc, best); break;
      case Aggregate::MeanNr2: acc += detail::nr2_term(best, dim); break;
    }
  }
  return agg == Aggregate::Max ? acc : acc / static_cast<double>(refs.size());
}

}  // namespace

namespace detail {

double igd_cost(const double* z, const double* p, std::size_t dim) noexcept {
  double acc = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const double diff = p[j] - z[j];
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

double igd_plus_cost(const double* z, const double* p, std::size_t dim) noexcept {
  double acc = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const double diff = std::max(p[j] - z[j], 0.0);
    acc += diff * diff;
  }
  return std::sqrt(acc);
}

double epsilon_cost(const double* z, const double* p, std::size_t dim) noexcept {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < dim; ++j) {
    worst = std::max(worst, p[j] - z[j]);
  }
  return worst;
}

double r2_cost(const double* w, const double* p, const double* utopian, std::size_t dim) noexcept {
  double worst = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    worst = std::max(worst, w[j] * std::abs(p[j] - utopian[j]));
  }
  return worst;
}

double nr2_cost(const double* w, const double* p, const double* ref, std::size_t dim) noexcept {
  // Zero weight components are the limit w_j -> 0+, i.e. they never bind.
  double reach = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < dim; ++j) {
    if (w[j] > 0.0) {
      reach = std::min(reach, (ref[j] - p[j]) / w[j]);
    }
  }
  return -reach;
}

double nr2_term(double min_cost, std::size_t dim) noexcept {
  const double reach = std::max(0.0, -min_cost);
  return std::pow(reach, static_cast<double>(dim));
}

double energy_pair(const double* a, const double* b, std::size_t dim, double exponent) {
  double d2 = 0.0;
  for (std::size_t j = 0; j < dim; ++j) {
    const double diff = a[j] - b[j];
    d2 += diff * diff;
  }
  if (d2 == 0.0) {
    throw DegenerateSubsetError("s-energy is undefined for coinciding points");
  }
  return std::pow(d2, -0.5 * exponent);
}

}  // namespace detail

void IndicatorSpec::validate(std::size_t dim) const {
  if (dim < 2) {
    throw std::invalid_argument("indicators need at least 2 objectives");
  }
  switch (kind) {
    case IndicatorKind::HV:
      if (!reference_point) {
        throw std::invalid_argument("HV requires a reference point");
      }
      require_dim(reference_point->dim(), dim, "reference point");
      break;
    case IndicatorKind::IGD:
    case IndicatorKind::IGDPlus:
    case IndicatorKind::Epsilon:
      require_nonempty_set(reference_set, dim, "reference set");
      break;
    case IndicatorKind::R2:
      require_weights(weight_set, dim);
      if (utopian_point) {
        require_dim(utopian_point->dim(), dim, "utopian point");
      }
      break;
    case IndicatorKind::NR2:
      require_weights(weight_set, dim);
      if (!reference_point) {
        throw std::invalid_argument("NR2 requires a reference point");
      }
      require_dim(reference_point->dim(), dim, "reference point");
      break;
    case IndicatorKind::SEnergy:
      if (energy_exponent < 0.0 || !std::isfinite(energy_exponent)) {
        throw std::invalid_argument("s-energy exponent must be positive");
      }
      break;
  }
}

IndicatorSpec IndicatorSpec::hypervolume(Point ref) {
  IndicatorSpec spec;
  spec.kind = IndicatorKind::HV;
  spec.reference_point = std::move(ref);
  return spec;
}

IndicatorSpec IndicatorSpec::igd(PointSet reference_set) {
  IndicatorSpec spec;
  spec.kind = IndicatorKind::IGD;
  spec.reference_set = std::move(reference_set);
  return spec;
}

IndicatorSpec IndicatorSpec::igd_plus(PointSet reference_set) {
  IndicatorSpec spec;
  spec.kind = IndicatorKind::IGDPlus;
  spec.reference_set = std::move(reference_set);
  return spec;
}

IndicatorSpec IndicatorSpec::epsilon(PointSet reference_set) {
  IndicatorSpec spec;
  spec.kind = IndicatorKind::Epsilon;
  spec.reference_set = std::move(reference_set);
  return spec;
}

IndicatorSpec IndicatorSpec::r2(PointSet weights, std::optional<Point> utopian) {
  IndicatorSpec spec;
  spec.kind = IndicatorKind::R2;
  spec.weight_set = std::move(weights);
  spec.utopian_point = std::move(utopian);
  return spec;
}

IndicatorSpec IndicatorSpec::nr2(PointSet weights, Point ref) {
  IndicatorSpec spec;
  spec.kind = IndicatorKind::NR2;
  spec.weight_set = std::move(weights);
  spec.reference_point = std::move(ref);
  return spec;
}

IndicatorSpec IndicatorSpec::s_energy(double exponent) {
  IndicatorSpec spec;
  spec.kind = IndicatorKind::SEnergy;
  spec.energy_exponent = exponent;
  return spec;
}

double hv(const PointSet& points, PointView ref) {
  if (points.empty()) {
    return 0.0;
  }
  require_dim(ref.size(), points.dim(), "reference point");
  HypervolumeEngine engine(points.dim());
  return engine.volume(points.flat(), ref);
}

double igd(const PointSet& points, const PointSet& reference_set) {
  return reference_indicator(points, reference_set, Aggregate::Mean,
                             [dim = points.dim()](const double* z, const double* p) {
                               return detail::igd_cost(z, p, dim);
                             });
}

double igd_plus(const PointSet& points, const PointSet& reference_set) {
  return reference_indicator(points, reference_set, Aggregate::Mean,
                             [dim = points.dim()](const double* z, const double* p) {
                               return detail::igd_plus_cost(z, p, dim);
                             });
}

double epsilon(const PointSet& points, const PointSet& reference_set) {
  return reference_indicator(points, reference_set, Aggregate::Max,
                             [dim = points.dim()](const double* z, const double* p) {
                               return detail::epsilon_cost(z, p, dim);
                             });
}

double r2(const PointSet& points, const PointSet& weights, PointView utopian) {
  require_dim(utopian.size(), points.dim(), "utopian point");
  return reference_indicator(points, weights, Aggregate::Mean,
                             [dim = points.dim(), u = utopian.data()](const double* w,
                                                                      const double* p) {
                               return detail::r2_cost(w, p, u, dim);
                             });
}

double nr2(const PointSet& points, const PointSet& weights, PointView ref) {
  require_dim(ref.size(), points.dim(), "reference point");
  return reference_indicator(points, weights, Aggregate::MeanNr2,
                             [dim = points.dim(), r = ref.data()](const double* w,
                                                                  const double* p) {
                               return detail::nr2_cost(w, p, r, dim);
                             });
}

double s_energy(const PointSet& points, double exponent) {
  if (!(exponent > 0.0)) {
    throw std::invalid_argument("s-energy exponent must be positive");
  }
  const std::size_t n = points.size();
  const std::size_t dim = points.dim();
  const double* pts = points.flat().data();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      acc += detail::energy_pair(pts + i * dim, pts + j * dim, dim, exponent);
    }
  }
  return 2.0 * acc;
}

double indicator_value(const IndicatorSpec& spec, const PointSet& points) {
  const std::size_t dim = points.dim();
  switch (spec.kind) {
    case IndicatorKind::HV:
      return hv(points, *spec.reference_point);
    case IndicatorKind::IGD:
      return igd(points, *spec.reference_set);
    case IndicatorKind::IGDPlus:
      return igd_plus(points, *spec.reference_set);
    case IndicatorKind::Epsilon:
      return epsilon(points, *spec.reference_set);
    case IndicatorKind::R2: {
      const Point utopian = spec.utopian_point ? *spec.utopian_point : Point::filled(dim, 0.0);
      return r2(points, *spec.weight_set, utopian);
    }
    case IndicatorKind::NR2:
      return nr2(points, *spec.weight_set, *spec.reference_point);
    case IndicatorKind::SEnergy:
      return s_energy(points, spec.exponent_for(dim));
  }
  throw std::logic_error("unhandled indicator kind");
}

ScoredValue evaluate(const IndicatorSpec& spec, const PointSet& points, EvaluationCounter& counter) {
  spec.validate(points.dim());
  counter.increment();
  const double value = indicator_value(spec, points);
  return {value, to_canonical(spec.kind, value)};
}

PointSet make_weight_vectors(std::size_t dim, std::size_t count, std::uint64_t seed) {
  if (dim < 2 || count < 1) {
    throw std::invalid_argument("weight vectors need dim >= 2 and count >= 1");
  }
  return lattice_with_fill(dim, count, seed);
}

}  // namespace issp
