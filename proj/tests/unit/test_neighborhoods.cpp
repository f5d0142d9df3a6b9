#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "issp/neighborhoods.hpp"
#include "oracles.hpp"

using namespace issp;

namespace {

std::vector<std::size_t> full_sort_nearest(const PointSet& pts, std::size_t i, std::size_t l) {
  std::vector<std::pair<double, std::size_t>> all;
  for (std::size_t j = 0; j < pts.size(); ++j) {
    if (j != i) {
      all.emplace_back(oracle::dist(pts[i], pts[j]), j);
    }
  }
  std::sort(all.begin(), all.end());
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < l; ++t) {
    out.push_back(all[t].second);
  }
  return out;
}

}  // namespace

TEST_CASE("nearest list along a front") {
  PointSet seven(2);
  for (int i = 0; i < 7; ++i) {
    const double t = i / 6.0;
    seven.push_back(Point{t, 1.0 - t * t});
  }
  const auto lists = build_nearest_list(seven, 2);
  CHECK(lists[0] == std::vector<std::size_t>{1, 2});
  CHECK(lists[6] == std::vector<std::size_t>{5, 4});
}

TEST_CASE("n = 3, l = 2 lists are forced") {
  PointSet three{{0, 1}, {0.5, 0.5}, {1, 0}};
  const auto nearest = build_nearest_list(three, 2);
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto random = build_random_list(three, 2, seed);
    for (std::size_t i = 0; i < 3; ++i) {
      std::set<std::size_t> expect;
      for (std::size_t j = 0; j < 3; ++j) {
        if (j != i) {
          expect.insert(j);
        }
      }
      CHECK(std::set<std::size_t>(random[i].begin(), random[i].end()) == expect);
      CHECK(std::set<std::size_t>(nearest[i].begin(), nearest[i].end()) == expect);
    }
  }
}

TEST_CASE("nearest list matches a full sort") {
  std::mt19937_64 rng(31);
  for (auto [n, d, l] : {std::tuple{100, 3, 10}, std::tuple{500, 4, 40}, std::tuple{60, 2, 59}}) {
    const auto pts = oracle::random_box(n, d, rng);
    const auto lists = build_nearest_list(pts, l);
    CHECK(lists.built_for(pts));
    for (std::size_t i = 0; i < pts.size(); ++i) {
      CHECK(lists[i] == full_sort_nearest(pts, i, l));
      const double last = oracle::dist(pts[i], pts[lists[i].back()]);
      const std::set<std::size_t> in(lists[i].begin(), lists[i].end());
      for (std::size_t j = 0; j < pts.size(); ++j) {
        if (j != i && !in.count(j)) {
          CHECK(last <= oracle::dist(pts[i], pts[j]));
        }
      }
    }
  }
}

TEST_CASE("nearest list breaks distance ties by index") {
  PointSet grid{{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const auto lists = build_nearest_list(grid, 3);
  CHECK(lists[0] == std::vector<std::size_t>{1, 2, 3});
}

TEST_CASE("list length bounds") {
  PointSet three{{0, 1}, {0.5, 0.5}, {1, 0}};
  CHECK_THROWS_AS(build_nearest_list(three, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_nearest_list(three, 3), std::invalid_argument);
  CHECK_THROWS_AS(build_random_list(three, 3, 1), std::invalid_argument);
}

TEST_CASE("random lists are deterministic, distinct and exclude the owner") {
  std::mt19937_64 rng(41);
  const auto pts = oracle::random_box(300, 3, rng);
  const auto a = build_random_list(pts, 25, 9);
  const auto b = build_random_list(pts, 25, 9);
  CHECK(a.lists == b.lists);
  CHECK(build_random_list(pts, 25, 10).lists != a.lists);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::set<std::size_t> s(a[i].begin(), a[i].end());
    CHECK(s.size() == 25);
    CHECK_FALSE(s.count(i));
    CHECK(*s.rbegin() < pts.size());
  }
}

TEST_CASE("random list inclusion frequency fits the uniform model") {
  const std::size_t n = 1000;
  const std::size_t l = 40;
  std::mt19937_64 rng(51);
  const auto pts = oracle::random_box(n, 3, rng);
  std::vector<double> hits(n, 0.0);
  const int seeds = 10;
  for (int s = 0; s < seeds; ++s) {
    const auto lists = build_random_list(pts, l, 1000 + s);
    for (const auto& list : lists.lists) {
      for (auto j : list) {
        hits[j] += 1.0;
      }
    }
  }
  // Each index can appear in the n - 1 lists of the other points.
  const double trials = static_cast<double>(seeds) * (n - 1);
  const double p = static_cast<double>(l) / (n - 1);
  const double mean = trials * p;
  const double sigma = std::sqrt(trials * p * (1 - p));
  std::size_t outside3 = 0;
  for (double h : hits) {
    outside3 += std::abs(h - mean) > 3 * sigma;
    CHECK(std::abs(h - mean) <= 5 * sigma);
  }
  // Expected fraction beyond 3 sigma is about 0.27 %.
  CHECK(outside3 <= n / 100);
}

TEST_CASE("lists round-trip through files and the cache") {
  std::mt19937_64 rng(61);
  const auto pts = oracle::random_box(80, 3, rng);
  const auto dir = std::filesystem::temp_directory_path() / "issp_test_lists";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto lists = build_random_list(pts, 7, 3);
  save_lists(dir / "r.json", lists);
  const auto back = load_lists(dir / "r.json");
  CHECK(back.lists == lists.lists);
  CHECK(back.seed == lists.seed);
  CHECK(back.built_for(pts));

  const auto first = cached_lists(dir / "cache", pts, ListKind::Nearest, 5);
  const auto second = cached_lists(dir / "cache", pts, ListKind::Nearest, 5);
  CHECK(first.lists == second.lists);
  CHECK(first.lists == build_nearest_list(pts, 5).lists);

  {
    std::ofstream f(dir / "bad.json");
    f << "{\"kind\": \"nearest\", \"l\": 2}";
  }
  CHECK_THROWS_AS(load_lists(dir / "bad.json"), std::runtime_error);
  std::filesystem::remove_all(dir);
}
