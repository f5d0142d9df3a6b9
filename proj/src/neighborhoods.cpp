#include "issp/neighborhoods.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include <json.hpp>

namespace issp {

namespace {

void check_length(const PointSet& points, std::size_t l) {
  if (points.size() < 2 || l < 1 || l > points.size() - 1) {
    throw std::invalid_argument("candidate list length must be in [1, n-1]; got l = " +
                                std::to_string(l) + " for n = " + std::to_string(points.size()));
  }
}

}  // namespace

std::string_view list_kind_name(ListKind kind) noexcept {
  return kind == ListKind::Nearest ? "nearest" : "random";
}

bool CandidateListSet::built_for(const PointSet& points) const {
  return n == points.size() && point_hash == content_hash(points);
}

CandidateListSet build_nearest_list(const PointSet& points, std::size_t l) {
  check_length(points, l);
  const std::size_t n = points.size();
  CandidateListSet out;
  out.kind = ListKind::Nearest;
  out.l = l;
  out.n = n;
  out.point_hash = content_hash(points);
  out.lists.resize(n);
  std::vector<std::pair<double, std::size_t>> dist;
  dist.reserve(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    dist.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) {
        dist.emplace_back(euclidean_dist(points[i], points[j]), j);
      }
    }
    // Lexicographic (distance, index) order is the tie rule.
    auto mid = dist.begin() + static_cast<std::ptrdiff_t>(l);
    std::nth_element(dist.begin(), mid - 1, dist.end());
    std::sort(dist.begin(), mid);
    auto& list = out.lists[i];
    list.reserve(l);
    for (auto it = dist.begin(); it != mid; ++it) {
      list.push_back(it->second);
    }
  }
  return out;
}

CandidateListSet build_random_list(const PointSet& points, std::size_t l, std::uint64_t seed) {
  check_length(points, l);
  const std::size_t n = points.size();
  CandidateListSet out;
  out.kind = ListKind::Random;
  out.l = l;
  out.n = n;
  out.seed = seed;
  out.point_hash = content_hash(points);
  out.lists.resize(n);
  std::mt19937_64 rng(seed);
  std::unordered_map<std::size_t, std::size_t> moved;
  // Partial Fisher-Yates over the n - 1 other indices, kept sparse.
  for (std::size_t i = 0; i < n; ++i) {
    moved.clear();
    auto value_at = [&](std::size_t pos) {
      auto it = moved.find(pos);
      return it == moved.end() ? pos : it->second;
    };
    auto& list = out.lists[i];
    list.reserve(l);
    for (std::size_t t = 0; t < l; ++t) {
      std::uniform_int_distribution<std::size_t> pick(t, n - 2);
      const std::size_t r = pick(rng);
      const std::size_t vr = value_at(r);
      moved[r] = value_at(t);
      list.push_back(vr < i ? vr : vr + 1);
    }
  }
  return out;
}

void save_lists(const std::filesystem::path& path, const CandidateListSet& lists) {
  nlohmann::json j;
  j["kind"] = list_kind_name(lists.kind);
  j["l"] = lists.l;
  j["n"] = lists.n;
  j["point_hash"] = lists.point_hash;
  if (lists.seed) {
    j["seed"] = *lists.seed;
  }
  j["lists"] = lists.lists;
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write candidate lists to '" + path.string() + "'");
  }
  out << j.dump();
}

CandidateListSet load_lists(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot read candidate lists from '" + path.string() + "'");
  }
  CandidateListSet out;
  try {
    const auto j = nlohmann::json::parse(in);
    const auto kind = j.at("kind").get<std::string>();
    if (kind != "nearest" && kind != "random") {
      throw std::runtime_error("unknown list kind '" + kind + "'");
    }
    out.kind = kind == "nearest" ? ListKind::Nearest : ListKind::Random;
    out.l = j.at("l").get<std::size_t>();
    out.n = j.at("n").get<std::size_t>();
    out.point_hash = j.at("point_hash").get<std::uint64_t>();
    if (j.contains("seed")) {
      out.seed = j.at("seed").get<std::uint64_t>();
    }
    out.lists = j.at("lists").get<std::vector<std::vector<std::size_t>>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed candidate list file '" + path.string() + "': " + e.what());
  }
  if (out.lists.size() != out.n) {
    throw std::runtime_error("candidate list file '" + path.string() + "' is truncated");
  }
  for (std::size_t i = 0; i < out.n; ++i) {
    if (out.lists[i].size() != out.l) {
      throw std::runtime_error("candidate list file '" + path.string() + "' has a ragged list");
    }
    for (std::size_t j : out.lists[i]) {
      if (j >= out.n || j == i) {
        throw std::runtime_error("candidate list file '" + path.string() + "' has a bad index");
      }
    }
  }
  return out;
}

CandidateListSet cached_lists(const std::filesystem::path& cache_dir, const PointSet& points,
                              ListKind kind, std::size_t l, std::uint64_t seed) {
  std::string name = std::string(list_kind_name(kind)) + "-" +
                     std::to_string(content_hash(points)) + "-l" + std::to_string(l);
  if (kind == ListKind::Random) {
    name += "-s" + std::to_string(seed);
  }
  const auto path = cache_dir / (name + ".json");
  if (std::filesystem::exists(path)) {
    auto lists = load_lists(path);
    if (lists.built_for(points) && lists.kind == kind && lists.l == l) {
      return lists;
    }
  }
  auto lists = kind == ListKind::Nearest ? build_nearest_list(points, l)
                                         : build_random_list(points, l, seed);
  std::filesystem::create_directories(cache_dir);
  save_lists(path, lists);
  return lists;
}

}  // namespace issp
