#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "matchstick/geometry.hpp"

namespace matchstick {

enum class Classification { Rigid, Flexible };
std::string_view to_string(Classification c);

/// First-order rigidity of a bar-joint framework.
struct RigidityReport {
  int rank = 0;
  int internal_dof = 0;  // 2|V| - 3 - rank
  std::vector<double> singular_values;  // descending
  double gap_ratio = 0.0;  // sigma_rank / sigma_{rank+1}; +inf when no smaller value exists
  /// Orthonormal internal flexes, each of length 2|V| and orthogonal to the
  /// two translations and the rotation about the centroid. Sign is fixed so
  /// the largest-magnitude entry is positive.
  std::vector<Eigen::VectorXd> flex_basis;
  Classification classification = Classification::Rigid;
  bool unrefined = false;        // input had max |len - 1| > 1e-6
  bool ill_conditioned = false;  // gap_ratio < 1e2
};

struct EdgeCriticality {
  std::size_t edge = 0;
  int dof_after_removal = 0;
};

struct CriticalityScan {
  int rank = 0;
  int internal_dof = 0;
  int redundancy = 0;  // |E| - rank
  std::vector<EdgeCriticality> edges;  // edge-list order
};

struct PebbleGameResult {
  int generic_dof = 0;
  std::vector<std::size_t> independent_edges;  // maximal (2,3)-sparse subset, edge indices
};

/// Row per edge (i,j): (v_i - v_j) in i's columns, negated in j's.
Eigen::MatrixXd rigidity_matrix(const Graph& g, const Embedding& emb);

/// Number of singular values above tau * sigma_max.
int numerical_rank(const Eigen::VectorXd& singular_values, double tau);

/// Orthonormal 2|V| x 3 basis of the trivial motions at `emb`.
Eigen::MatrixXd trivial_motions(const Embedding& emb);

/// SVD-based classification. Throws DegenerateInput for fewer than 2
/// vertices and Disconnected for disconnected graphs.
RigidityReport analyze(const Graph& g, const Embedding& emb, const ToleranceProfile& tol = {});

/// Internal dof after deleting each edge in turn (full SVD per edge).
CriticalityScan criticality_scan(const Graph& g, const Embedding& emb, const ToleranceProfile& tol = {});

/// Combinatorial (2,3) pebble game: generic internal dof of the graph.
PebbleGameResult pebble_game_2_3(const Graph& g);

}  // namespace matchstick
