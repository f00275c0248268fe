#pragma once

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "matchstick/geometry.hpp"

namespace matchstick::detail {

/// Uniform bucket grid keyed by integer cell coordinates. Items are inserted
/// into every cell their bounding box touches.
class SpatialGrid {
 public:
  explicit SpatialGrid(double cell_size) : cell_(cell_size) {}

  void insert_box(int item, Point2 lo, Point2 hi) {
    const auto [x0, y0] = cell_of(lo);
    const auto [x1, y1] = cell_of(hi);
    for (std::int64_t cx = x0; cx <= x1; ++cx)
      for (std::int64_t cy = y0; cy <= y1; ++cy) cells_[key(cx, cy)].push_back(item);
  }

  void insert_point(int item, Point2 p) { insert_box(item, p, p); }

  /// Items stored in any cell overlapping the box, possibly with repeats.
  template <class Fn>
  void visit_box(Point2 lo, Point2 hi, Fn&& fn) const {
    const auto [x0, y0] = cell_of(lo);
    const auto [x1, y1] = cell_of(hi);
    for (std::int64_t cx = x0; cx <= x1; ++cx)
      for (std::int64_t cy = y0; cy <= y1; ++cy) {
        auto it = cells_.find(key(cx, cy));
        if (it == cells_.end()) continue;
        for (int item : it->second) fn(item);
      }
  }

  template <class Fn>
  void visit_cells(Fn&& fn) const {
    for (const auto& [k, items] : cells_) fn(items);
  }

 private:
  std::pair<std::int64_t, std::int64_t> cell_of(Point2 p) const {
    return {static_cast<std::int64_t>(std::floor(p.x / cell_)),
            static_cast<std::int64_t>(std::floor(p.y / cell_))};
  }
  static std::uint64_t key(std::int64_t cx, std::int64_t cy) {
    return (static_cast<std::uint64_t>(cx) << 32) ^ (static_cast<std::uint64_t>(cy) & 0xffffffffULL);
  }

  double cell_;
  std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = static_cast<int>(i);
  }
  int find(int a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  // Smaller root wins, so the partition's representatives do not depend on
  // the order unions are applied.
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<int> parent_;
};

inline double point_segment_distance(Point2 p, Point2 a, Point2 b) {
  const Point2 ab = b - a;
  const double len2 = squared_norm(ab);
  if (len2 == 0.0) return norm(p - a);
  double t = dot(p - a, ab) / len2;
  t = t < 0.0 ? 0.0 : (t > 1.0 ? 1.0 : t);
  return norm(p - (a + t * ab));
}

}  // namespace matchstick::detail
