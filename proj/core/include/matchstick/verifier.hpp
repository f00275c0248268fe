#pragma once

#include <map>
#include <optional>
#include <vector>

#include "matchstick/geometry.hpp"

namespace matchstick {

struct UnitLengthCheck {
  bool ok = false;
  double max_deviation = 0.0;
  std::vector<double> deviations;  // |len - 1| per edge, edge-list order
};

struct EdgePairViolation {
  std::size_t edge_a = 0;
  std::size_t edge_b = 0;
  double clearance = 0.0;
  friend bool operator==(const EdgePairViolation&, const EdgePairViolation&) = default;
};

struct VertexEdgeViolation {
  VertexId vertex = 0;
  std::size_t edge = 0;
  double clearance = 0.0;
  friend bool operator==(const VertexEdgeViolation&, const VertexEdgeViolation&) = default;
};

struct CrossingCheck {
  bool ok = true;
  std::vector<EdgePairViolation> edge_pairs;      // sorted by (edge_a, edge_b), edge_a < edge_b
  std::vector<VertexEdgeViolation> vertex_edges;  // sorted by (vertex, edge)
};

struct VerificationCertificate {
  bool unit_ok = false;
  double max_abs_length_deviation = 0.0;
  bool crossing_ok = false;
  std::vector<EdgePairViolation> violating_edge_pairs;
  std::vector<VertexEdgeViolation> vertex_edge_violations;
  bool degrees_ok = false;
  DegreeProfile degree_profile;
  bool connected = false;
  bool separation_ok = false;
  std::vector<std::pair<VertexId, VertexId>> close_pairs;
  bool overall = false;
};

struct PatchReport {
  bool unit_ok = false;
  double max_abs_length_deviation = 0.0;
  bool crossing_ok = false;
  std::vector<EdgePairViolation> violating_edge_pairs;
  std::vector<VertexEdgeViolation> vertex_edge_violations;
  bool separation_ok = false;
  std::size_t boundary_count = 0;
  std::vector<VertexId> boundary_vertices;
  std::map<int, std::size_t> interior_degrees;
  bool interior_degrees_ok = false;
  bool overall = false;
};

UnitLengthCheck check_unit_lengths(const Graph& g, const Embedding& emb, double eps);

/// Non-adjacent edges must keep more than `delta_cross` clearance, edges
/// sharing a vertex may meet only there, and no vertex may lie within
/// `delta_cross` of a non-incident edge.
CrossingCheck check_noncrossing(const Graph& g, const Embedding& emb, double delta_cross);

/// Subset semantics: ok iff every degree is m or n.
std::pair<bool, DegreeProfile> degree_profile(const Graph& g, int m, int n);

/// Number of degree-n vertices forced by the handshake lemma for an
/// (m,n)-regular graph with the given counts. Throws Inconsistent if the
/// result is not a non-negative integer.
std::size_t expected_high_degree_count(std::size_t n_vertices, std::size_t n_edges, int m, int n);

/// Runs every predicate. Unit lengths are checked against `eps`, which
/// defaults to `tol.eps_raw`. Throws DegenerateInput for fewer than 2 vertices.
VerificationCertificate verify_matchstick(const Graph& g, const Embedding& emb, int m, int n,
                                          const ToleranceProfile& tol = {},
                                          std::optional<double> eps = std::nullopt);

/// Finite patch of an infinite graph: vertices of degree < m are boundary
/// and exempt from the degree profile.
PatchReport verify_patch(const Graph& g, const Embedding& emb, int m, int n,
                         const ToleranceProfile& tol = {},
                         std::optional<double> eps = std::nullopt);

}  // namespace matchstick
