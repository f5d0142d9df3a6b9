#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

#include "issp/instances.hpp"
#include "oracles.hpp"

using namespace issp;

namespace {

std::filesystem::path scratch(const char* name) {
  auto dir = std::filesystem::temp_directory_path() / "issp_test_instances";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void check_front_properties(const PointSet& pts) {
  CHECK(nondominated_filter(pts).size() == pts.size());
  for (double v : pts.flat()) {
    CHECK(v >= -1e-12);
    CHECK(v <= 1.0 + 1e-12);
  }
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

TEST_CASE("gen_linear") {
  CHECK(gen_linear(2, 2, 1) == PointSet{{1, 0}, {0, 1}});
  const auto pts = gen_linear(1000, 4, 1);
  CHECK(pts.size() == 1000);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    double s = 0.0;
    for (double v : pts[i]) {
      s += v;
    }
    CHECK(std::abs(s - 1.0) <= 1e-9);
  }
  CHECK(nondominated_filter(pts).size() == 1000);
  CHECK(gen_linear(1000, 4, 1) == pts);
  CHECK(gen_linear(1000, 4, 2) != pts);
  CHECK_THROWS_AS(gen_linear(3, 4, 1), std::invalid_argument);
}

TEST_CASE("gen_linear polish keeps points on the simplex and lowers the energy") {
  const auto raw = gen_linear(200, 3, 4);
  const auto polished = gen_linear(200, 3, 4, true);
  for (std::size_t i = 0; i < polished.size(); ++i) {
    double s = 0.0;
    for (double v : polished[i]) {
      CHECK(v >= 0.0);
      s += v;
    }
    CHECK(std::abs(s - 1.0) <= 1e-9);
  }
  CHECK(s_energy(polished, 4.0) < s_energy(raw, 4.0));
}

TEST_CASE("transform_front examples") {
  const auto unit = transform_front(PointSet{{1, 0, 0}, {0, 1, 0}}, FrontKind::Concave);
  CHECK(unit[0][0] == 1.0);
  CHECK(unit[0][1] == 0.0);
  const auto half = transform_front(PointSet{{0.5, 0.5}}, FrontKind::Concave);
  CHECK(half[0][0] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(half[0][1] == doctest::Approx(0.7071).epsilon(1e-4));
  const auto inv = transform_front(gen_linear(50, 2, 3), FrontKind::InvLinear);
  CHECK(oracle::nondominated(inv).size() == inv.size());
  CHECK_THROWS_AS(transform_front(gen_linear(5, 2, 1), FrontKind::Dtlz7), std::invalid_argument);
}

TEST_CASE("every front family is non-dominated inside the unit box") {
  for (auto front : kAllFronts) {
    CAPTURE(front_name(front));
    InstanceConfig cfg;
    cfg.front = front;
    cfg.d = 3;
    cfg.seed = 5;
    if (front == FrontKind::Dtlz7) {
      cfg.m_per_axis = 9;
    } else {
      cfg.n = 400;
    }
    const auto pts = generate_instance(cfg);
    check_front_properties(pts);
    CHECK(parse_front(front_name(front)) == front);
    CHECK(content_hash(generate_instance(cfg)) == content_hash(pts));
  }
  CHECK_THROWS_AS(parse_front("sphere"), std::invalid_argument);
}

TEST_CASE("gen_dtlz7 sizes") {
  const auto big = gen_dtlz7(13, 4);
  CHECK(big.size() == 2197);
  CHECK(nondominated_filter(big).size() == 2197);
  const auto two = gen_dtlz7(2, 2);
  CHECK(two.size() == 2);
  // One sample per disconnected segment: the two first coordinates lie in
  // different intervals, so they are far apart.
  CHECK(std::abs(two[0][0] - two[1][0]) > 0.5);
  CHECK(dtlz7_axis_count(2197, 4) == 13);
  CHECK_FALSE(dtlz7_axis_count(2000, 4).has_value());
}

TEST_CASE("gen_dtlz7 splits into 2^(d-1) connected regions") {
  for (std::size_t d : {2, 3, 4}) {
    const std::size_t m = d == 4 ? 9 : 12;
    const auto pts = gen_dtlz7(m, d);
    // Gap threshold from the distinct values of the first axis: midway
    // between the largest gap (between intervals) and the next largest.
    std::vector<double> axis;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      axis.push_back(pts[i][0]);
    }
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
    std::vector<double> gaps;
    for (std::size_t i = 1; i < axis.size(); ++i) {
      gaps.push_back(axis[i] - axis[i - 1]);
    }
    std::sort(gaps.rbegin(), gaps.rend());
    const double threshold = 0.5 * (gaps[0] + gaps[1]);
    std::vector<std::size_t> parent(pts.size());
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (std::size_t a = 0; a < pts.size(); ++a) {
      for (std::size_t b = a + 1; b < pts.size(); ++b) {
        double cheb = 0.0;
        for (std::size_t j = 0; j + 1 < d; ++j) {
          cheb = std::max(cheb, std::abs(pts[a][j] - pts[b][j]));
        }
        if (cheb < threshold) {
          parent[find_root(parent, a)] = find_root(parent, b);
        }
      }
    }
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      roots.insert(find_root(parent, i));
    }
    CHECK(roots.size() == (std::size_t{1} << (d - 1)));
  }
}

TEST_CASE("load_points normalizes and filters") {
  const auto path = scratch("raw.txt");
  {
    std::ofstream f(path);
    f << "0 10\n5 0\n";
  }
  const auto loaded = load_points(path);
  CHECK(loaded.points == PointSet{{0, 1}, {1, 0}});
  CHECK(loaded.dominated_removed == 0);
  {
    std::ofstream f(path);
    f << "0 10\n5 0\n4 9\n5 10\n";
  }
  const auto filtered = load_points(path);
  CHECK(filtered.points.size() == 3);
  CHECK(filtered.dominated_removed == 1);

  const auto saved = scratch("saved.txt");
  save_points(saved, filtered.points);
  CHECK(read_point_file(saved) == filtered.points);

  CHECK_THROWS_AS(load_points(path, Point{0, 0}, Point{0, 20}), std::invalid_argument);
  CHECK_THROWS_AS(load_points(scratch("absent.txt")), std::runtime_error);
  {
    std::ofstream f(path);
    f << "1 2\n3 4 5\n";
  }
  CHECK_THROWS_AS(load_points(path), std::runtime_error);
  std::filesystem::remove_all(path.parent_path());
}

TEST_CASE("make_reference_set") {
  CHECK(make_reference_set(FrontKind::Linear, 3, 2, 1) == PointSet{{1, 0}, {0.5, 0.5}, {0, 1}});
  const auto z = make_reference_set(FrontKind::Linear, 1000, 4, 1);
  CHECK(z.size() == 1000);
  CHECK(make_reference_set(FrontKind::Linear, 1000, 4, 1) == z);
  for (auto front : kAllFronts) {
    const auto ref = make_reference_set(front, 300, 3, 2);
    check_front_properties(ref);
  }
}

TEST_CASE("default_spec") {
  const auto hv_spec = default_spec(IndicatorKind::HV, FrontKind::Linear, 4);
  CHECK(*hv_spec.reference_point == Point::filled(4, 1.1));
  const auto igd_spec = default_spec(IndicatorKind::IGD, FrontKind::Linear, 4);
  CHECK(igd_spec.reference_set->size() == 1000);
  const auto r2_spec = default_spec(IndicatorKind::R2, FrontKind::Linear, 4);
  CHECK(r2_spec.weight_set->size() == 1000);
  CHECK(default_spec(IndicatorKind::SEnergy, FrontKind::Linear, 4).exponent_for(4) == 5.0);
}
