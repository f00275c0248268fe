#include "matchstick/assembler.hpp"

#include <algorithm>
#include <set>

#include "matchstick/verifier.hpp"
#include "spatial_grid.hpp"

namespace matchstick {

MergeResult merge(const std::vector<Placement>& placements, double snap_tol, double vertex_sep, double block_eps) {
  if (placements.empty()) throw Error(ErrorKind::InvalidArgument, "merge needs at least one placement");
  if (!(snap_tol > 0.0 && vertex_sep > 0.0 && block_eps > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "merge tolerances must be positive");
  }

  std::vector<Point2> points;
  std::vector<std::size_t> offset;
  for (std::size_t p = 0; p < placements.size(); ++p) {
    const Placement& pl = placements[p];
    check_embedding_shape(pl.block, pl.embedding);
    if (!check_unit_lengths(pl.block, pl.embedding, block_eps).ok) {
      throw Error(ErrorKind::InvalidGraph, "block " + std::to_string(p) + " has non-unit edges");
    }
    if (!check_noncrossing(pl.block, pl.embedding, 1e-7).ok) {
      throw Error(ErrorKind::InvalidGraph, "block " + std::to_string(p) + " has crossing edges");
    }
    offset.push_back(points.size());
    for (const Point2& q : pl.embedding.positions()) points.push_back(pl.iso.apply(q));
  }

  const std::size_t total = points.size();
  detail::UnionFind clusters(total);
  detail::SpatialGrid grid(snap_tol);
  for (std::size_t i = 0; i < total; ++i) grid.insert_point(static_cast<int>(i), points[i]);
  const Point2 reach{snap_tol, snap_tol};
  for (std::size_t i = 0; i < total; ++i) {
    grid.visit_box(points[i] - reach, points[i] + reach, [&](int j) {
      if (static_cast<std::size_t>(j) != i && distance(points[i], points[static_cast<std::size_t>(j)]) < snap_tol) {
        clusters.unite(static_cast<int>(i), j);
      }
    });
  }

  // Merged ids in order of first appearance.
  std::vector<VertexId> id_of_root(total, -1);
  std::vector<VertexId> id(total);
  std::vector<std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < total; ++i) {
    const int root = clusters.find(static_cast<int>(i));
    if (id_of_root[static_cast<std::size_t>(root)] < 0) {
      id_of_root[static_cast<std::size_t>(root)] = static_cast<VertexId>(members.size());
      members.emplace_back();
    }
    id[i] = id_of_root[static_cast<std::size_t>(root)];
    members[static_cast<std::size_t>(id[i])].push_back(i);
  }

  std::vector<Point2> merged;
  merged.reserve(members.size());
  for (const auto& group : members) {
    Point2 sum;
    for (std::size_t i : group) sum = sum + points[i];
    merged.push_back(sum / static_cast<double>(group.size()));
  }

  MergeResult result;
  std::set<std::pair<VertexId, VertexId>> edges;
  for (std::size_t p = 0; p < placements.size(); ++p) {
    const Placement& pl = placements[p];
    std::vector<VertexId> map(pl.block.vertex_count());
    for (std::size_t v = 0; v < map.size(); ++v) map[v] = id[offset[p] + v];
    for (const Edge& e : pl.block.edges()) {
      const VertexId a = map[static_cast<std::size_t>(e.u)];
      const VertexId b = map[static_cast<std::size_t>(e.v)];
      if (a == b) {
        throw Error(ErrorKind::InvalidGraph, "merge would collapse edge (" + std::to_string(e.u) + ", " +
                                                 std::to_string(e.v) + ") of block " + std::to_string(p));
      }
      edges.insert(std::minmax(a, b));
    }
    result.merge_map.push_back(std::move(map));
  }

  result.embedding = Embedding(std::move(merged));
  const auto close = close_vertex_pairs(result.embedding, vertex_sep);
  if (!close.empty()) {
    throw Error(ErrorKind::AmbiguousVertices, "merged vertices " + std::to_string(close.front().first) + " and " +
                                                  std::to_string(close.front().second) + " are closer than vertex_sep");
  }
  std::vector<Edge> edge_list;
  edge_list.reserve(edges.size());
  for (const auto& [a, b] : edges) edge_list.push_back({a, b});
  result.graph = Graph(result.embedding.size(), std::move(edge_list));
  return result;
}

AugmentedGraph add_unit_edge(const Graph& g, const Embedding& emb, VertexId a, VertexId b, double eps) {
  check_embedding_shape(g, emb);
  const auto n = static_cast<VertexId>(g.vertex_count());
  if (a < 0 || b < 0 || a >= n || b >= n) throw Error(ErrorKind::IndexOutOfRange, "edge endpoint out of range");
  if (a == b) throw Error(ErrorKind::InvalidArgument, "edge endpoints must differ");
  if (g.has_edge(a, b)) {
    throw Error(ErrorKind::DuplicateEdge, "edge (" + std::to_string(a) + ", " + std::to_string(b) + ") already exists");
  }
  const double d = distance(emb[static_cast<std::size_t>(a)], emb[static_cast<std::size_t>(b)]);
  if (std::abs(d - 1.0) > eps) {
    throw Error(ErrorKind::Geometry, "vertices " + std::to_string(a) + " and " + std::to_string(b) +
                                         " are " + std::to_string(d) + " apart, not unit distance");
  }
  return {g.with_edge(a, b), emb};
}

}  // namespace matchstick
