#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "issp/harness.hpp"

namespace py = pybind11;
using namespace issp;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

PointSet to_points(const Array& a) {
  if (a.ndim() != 2) {
    throw std::invalid_argument("expected a 2-d array of shape (n, d)");
  }
  const auto n = static_cast<std::size_t>(a.shape(0));
  const auto d = static_cast<std::size_t>(a.shape(1));
  return PointSet(d, std::vector<double>(a.data(), a.data() + n * d));
}

Array to_array(const PointSet& p) {
  Array out({p.size(), p.dim()});
  std::copy(p.flat().begin(), p.flat().end(), out.mutable_data());
  return out;
}

Point to_point(const std::vector<double>& v) { return Point(v); }

IndicatorSpec make_spec(const std::string& name, std::size_t d,
                        const std::optional<std::string>& front,
                        const std::optional<std::vector<double>>& ref_point,
                        const std::optional<Array>& ref_set, const std::optional<Array>& weights,
                        double exponent, std::uint64_t seed) {
  const auto kind = parse_indicator(name);
  ReferenceDefaults defaults;
  defaults.energy_exponent = exponent;
  defaults.seed = seed;
  auto spec = default_spec(kind, front ? parse_front(*front) : FrontKind::Linear, d, defaults);
  if (ref_point) {
    spec.reference_point = to_point(*ref_point);
  }
  if (ref_set) {
    spec.reference_set = to_points(*ref_set);
  } else if (!front && (kind == IndicatorKind::IGD || kind == IndicatorKind::IGDPlus ||
                        kind == IndicatorKind::Epsilon)) {
    throw std::invalid_argument("reference-set indicators need front= or ref_set=");
  }
  if (weights) {
    spec.weight_set = to_points(*weights);
  }
  spec.validate(d);
  return spec;
}

py::dict outcome_dict(const SearchOutcome& o) {
  py::dict out;
  out["subset"] = o.subset.selected;
  out["value"] = o.raw_value;
  out["evaluations"] = o.evaluations;
  out["accepted_swaps"] = o.accepted_swaps;
  out["wall_time_ms"] = o.wall_time_ms;
  out["sweep_evaluations"] = o.sweep_evaluations;
  py::list trace;
  for (const auto& row : o.trace) {
    trace.append(py::make_tuple(row.eval_index, row.dist, row.success, row.canonical_after));
  }
  out["trace"] = trace;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Indicator-based subset selection";

  py::register_exception<DegenerateSubsetError>(m, "DegenerateSubsetError", PyExc_ValueError);

  m.def("hv", [](const Array& p, const std::vector<double>& ref) { return hv(to_points(p), to_point(ref)); },
        py::arg("points"), py::arg("ref"));
  m.def("igd", [](const Array& p, const Array& z) { return igd(to_points(p), to_points(z)); },
        py::arg("points"), py::arg("reference_set"));
  m.def("igd_plus", [](const Array& p, const Array& z) { return igd_plus(to_points(p), to_points(z)); },
        py::arg("points"), py::arg("reference_set"));
  m.def("epsilon", [](const Array& p, const Array& z) { return epsilon(to_points(p), to_points(z)); },
        py::arg("points"), py::arg("reference_set"));
  m.def(
      "r2",
      [](const Array& p, const Array& w, std::optional<std::vector<double>> utopian) {
        const auto pts = to_points(p);
        return r2(pts, to_points(w),
                  utopian ? to_point(*utopian) : Point::filled(pts.dim(), 0.0));
      },
      py::arg("points"), py::arg("weights"), py::arg("utopian") = py::none());
  m.def(
      "nr2",
      [](const Array& p, const Array& w, const std::vector<double>& ref) {
        return nr2(to_points(p), to_points(w), to_point(ref));
      },
      py::arg("points"), py::arg("weights"), py::arg("ref"));
  m.def("s_energy", [](const Array& p, double s) { return s_energy(to_points(p), s); },
        py::arg("points"), py::arg("exponent"));

  m.def(
      "generate",
      [](const std::string& front, std::size_t n, std::size_t d, std::uint64_t seed,
         std::size_t m_per_axis) {
        InstanceConfig cfg;
        cfg.front = parse_front(front);
        cfg.n = n;
        cfg.d = d;
        cfg.seed = seed;
        cfg.m_per_axis = m_per_axis;
        return to_array(generate_instance(cfg));
      },
      py::arg("front"), py::arg("n"), py::arg("d"), py::arg("seed") = 0,
      py::arg("m_per_axis") = 0);
  m.def(
      "reference_set",
      [](const std::string& front, std::size_t m, std::size_t d, std::uint64_t seed) {
        return to_array(make_reference_set(parse_front(front), m, d, seed));
      },
      py::arg("front"), py::arg("m"), py::arg("d"), py::arg("seed") = 0);
  m.def(
      "weight_vectors",
      [](std::size_t d, std::size_t count, std::uint64_t seed) {
        return to_array(make_weight_vectors(d, count, seed));
      },
      py::arg("d"), py::arg("count"), py::arg("seed") = 0);

  m.def("nearest_lists", [](const Array& p, std::size_t l) { return build_nearest_list(to_points(p), l).lists; },
        py::arg("points"), py::arg("l"));
  m.def(
      "random_lists",
      [](const Array& p, std::size_t l, std::uint64_t seed) {
        return build_random_list(to_points(p), l, seed).lists;
      },
      py::arg("points"), py::arg("l"), py::arg("seed"));

  m.def(
      "select",
      [](const Array& p, std::size_t k, const std::string& method, const std::string& indicator,
         std::optional<std::string> front, std::optional<std::vector<double>> ref_point,
         std::optional<Array> ref_set, std::optional<Array> weights, double exponent,
         std::size_t l_nearest, std::size_t l_random, std::uint64_t seed, bool trace) {
        const auto pts = to_points(p);
        const auto spec =
            make_spec(indicator, pts.dim(), front, ref_point, ref_set, weights, exponent, seed);
        SearchOptions opt;
        opt.trace = trace;
        SearchOutcome out;
        {
          py::gil_scoped_release release;
          switch (parse_method(method)) {
            case Method::LS:
              out = local_search(pts, k, spec, seed, opt);
              break;
            case Method::LSN:
              out = local_search_cl(pts, k, spec, build_nearest_list(pts, l_nearest), seed, opt);
              break;
            case Method::LSR:
              out = ls_rn(pts, k, spec, l_random, 0, seed, opt);
              break;
            case Method::LSRN:
              out = ls_rn(pts, k, spec, l_random, l_nearest, seed, opt);
              break;
            case Method::GS:
              out = greedy(pts, k, spec);
              break;
            case Method::GSL:
              out = lazy_greedy(pts, k, spec);
              break;
          }
        }
        return outcome_dict(out);
      },
      py::arg("points"), py::arg("k"), py::arg("method") = "ls", py::arg("indicator") = "hv",
      py::arg("front") = py::none(), py::arg("ref_point") = py::none(),
      py::arg("ref_set") = py::none(), py::arg("weights") = py::none(),
      py::arg("exponent") = 0.0, py::arg("l_nearest") = 40, py::arg("l_random") = 40,
      py::arg("seed") = 1, py::arg("trace") = false);

  m.def("relative_error", &relative_error, py::arg("baseline_mean"), py::arg("other_mean"));
  m.def("wilcoxon_rank_sum", &wilcoxon_rank_sum, py::arg("a"), py::arg("b"));
}
