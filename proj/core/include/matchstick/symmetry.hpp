#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matchstick/geometry.hpp"

namespace matchstick {

/// Isometry group of an embedded graph, centered at the vertex centroid.
struct SymmetryGroup {
  int rotation_order = 1;
  int mirror_count = 0;
  std::string classification = "C_1";  // "C_k" or "D_k"
  /// Rotation by 2*pi/k (when k > 1), then one reflection (when mirrors exist).
  std::vector<Isometry> generators;
  Point2 center;
  std::vector<double> mirror_angles;  // axis directions in [0, pi), ascending
};

/// Vertex permutation induced by `iso`: perm[v] is the vertex within `sym_tol`
/// of iso(v). Empty when some image has no partner, two images share one, or
/// an edge is not carried to an edge.
std::optional<std::vector<VertexId>> induced_permutation(const Graph& g, const Embedding& emb, const Isometry& iso,
                                                         double sym_tol);

bool is_automorphism(const Graph& g, const Embedding& emb, const Isometry& iso, double sym_tol);

SymmetryGroup detect_symmetries(const Graph& g, const Embedding& emb, double sym_tol = 1e-6);

/// Every element of the group: k rotations followed by the mirrors.
std::vector<Isometry> group_elements(const SymmetryGroup& group);

/// Orbit average: each vertex moves to the mean of the pulled-back positions
/// of its images under every group element, so the result has the group as
/// an exact symmetry. Elements are matched at `match_tol`; throws Geometry
/// if one of them does not induce an automorphism.
Embedding symmetrize(const Graph& g, const Embedding& emb, const SymmetryGroup& group, double match_tol);

}  // namespace matchstick
