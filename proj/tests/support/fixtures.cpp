#include "fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "matchstick/refiner.hpp"

namespace matchstick::testing {

std::string asset_path(std::string_view relative) {
  return (std::filesystem::path(MATCHSTICK_ASSET_DIR) / relative).string();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

IngestResult ingest_figure(std::string_view stem) {
  return ingest_tikz(read_file(asset_path("figures/" + std::string(stem) + ".tikz")));
}

const RefinedFigure& refined_figure(std::string_view stem) {
  static std::mutex mutex;
  static std::map<std::string, RefinedFigure, std::less<>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(stem); it != cache.end()) return it->second;
  IngestResult r = ingest_figure(stem);
  RefinedFigure f;
  f.refined = refine(r.graph, r.embedding).embedding;
  f.graph = std::move(r.graph);
  f.raw = std::move(r.embedding);
  f.names = std::move(r.names);
  f.markers = std::move(r.marker_vertices);
  return cache.emplace(std::string(stem), std::move(f)).first->second;
}

std::vector<std::string> figure_stems() {
  std::vector<std::string> stems;
  for (const auto& e : std::filesystem::directory_iterator(asset_path("figures")))
    if (e.path().extension() == ".tikz") stems.push_back(e.path().stem().string());
  std::sort(stems.begin(), stems.end());
  return stems;
}

Drawing unit_triangle() {
  return {Graph(3, {{0, 1}, {1, 2}, {2, 0}}), Embedding({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}})};
}

Drawing unit_square() {
  return {Graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}), Embedding({{0, 0}, {1, 0}, {1, 1}, {0, 1}})};
}

Drawing lattice_wheel() {
  std::vector<Point2> pts{{0, 0}};
  std::vector<Edge> edges;
  for (int k = 0; k < 6; ++k) {
    const double a = kPi / 3 * k;
    pts.push_back({std::cos(a), std::sin(a)});
    edges.push_back({0, k + 1});
    edges.push_back({k + 1, (k + 1) % 6 + 1});
  }
  return {Graph(7, std::move(edges)), Embedding(std::move(pts))};
}

Drawing random_graph(std::mt19937_64& rng, int n, int extra_edges) {
  std::uniform_real_distribution<double> coord(0.0, 3.0);
  std::vector<Point2> pts;
  for (int i = 0; i < n; ++i) pts.push_back({coord(rng), coord(rng)});
  std::set<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> pick(0, i - 1);
    edges.insert({pick(rng), i});
  }
  std::uniform_int_distribution<int> any(0, n - 1);
  for (int tries = 0; tries < 20 * extra_edges && static_cast<int>(edges.size()) < n - 1 + extra_edges; ++tries) {
    int a = any(rng), b = any(rng);
    if (a == b) continue;
    edges.insert(std::minmax(a, b));
  }
  std::vector<Edge> list;
  for (const auto& [a, b] : edges) list.push_back({a, b});
  return {Graph(static_cast<std::size_t>(n), std::move(list)), Embedding(std::move(pts))};
}

Isometry random_isometry(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> shift(-5.0, 5.0);
  std::bernoulli_distribution mirror(0.5);
  Isometry iso = mirror(rng) ? Isometry::reflection(angle(rng), {shift(rng), shift(rng)})
                             : Isometry::rotation(angle(rng), {shift(rng), shift(rng)});
  iso.translation = {shift(rng), shift(rng)};
  return iso;
}

}  // namespace matchstick::testing
