#pragma once

#include <vector>

#include "matchstick/geometry.hpp"

namespace matchstick {

/// A building block placed in the plane by an isometry.
struct Placement {
  Graph block;
  Embedding embedding;
  Isometry iso;
};

struct MergeResult {
  Graph graph;
  Embedding embedding;
  /// merge_map[p][v] is the merged id of vertex v of placement p.
  std::vector<std::vector<VertexId>> merge_map;
};

/// Union of the placed blocks. Vertices closer than `snap_tol` are identified
/// (transitively) at the mean of their positions and duplicate edges collapse.
/// Each block must be a unit-length, crossing-free drawing within `block_eps`.
/// Throws InvalidGraph when an edge's endpoints would merge and
/// AmbiguousVertices when merged vertices end up closer than `vertex_sep`.
MergeResult merge(const std::vector<Placement>& placements, double snap_tol = 1e-3, double vertex_sep = 1e-4,
                  double block_eps = 1e-3);

struct AugmentedGraph {
  Graph graph;
  Embedding embedding;
};

/// Appends edge (a, b). Throws Geometry unless |dist(a,b) - 1| <= eps and
/// DuplicateEdge when the edge already exists.
AugmentedGraph add_unit_edge(const Graph& g, const Embedding& emb, VertexId a, VertexId b, double eps = 1e-3);

}  // namespace matchstick
