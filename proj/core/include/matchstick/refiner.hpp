#pragma once

#include <optional>
#include <vector>

#include <Eigen/SparseCore>

#include "matchstick/geometry.hpp"

namespace matchstick {

/// Extra squared-distance constraint |v_a - v_b|^2 = target^2, used to pin
/// a marked pair (for instance a pair required to be two units apart).
struct DistanceConstraint {
  VertexId a = 0;
  VertexId b = 0;
  double target = 1.0;
};

/// Removes the three rigid motions: `pinned` stays at its initial location
/// and the direction pinned -> toward keeps its initial angle.
struct Gauge {
  VertexId pinned = 0;
  VertexId toward = 0;
};

struct RefineOptions {
  int max_iterations = 100;
  double residual_target = 1e-13;  // on max |len^2 - 1|
  double damping_init = 1e-4;
  std::optional<Gauge> gauge;  // default: vertex 0 and its lowest-indexed neighbor
  std::vector<DistanceConstraint> extra_constraints;
};

struct RefineReport {
  bool converged = false;
  int iterations = 0;
  double final_max_abs_residual = 0.0;
  double displacement_max = 0.0;
};

struct RefineResult {
  Embedding embedding;
  RefineReport report;
};

/// |v_i - v_j|^2 - 1 per edge, in edge-list order.
Eigen::VectorXd residuals(const Graph& g, const Embedding& emb);

/// Exact derivative of residuals(): |E| x 2|V|, at most 4 nonzeros per row.
Eigen::SparseMatrix<double> jacobian(const Graph& g, const Embedding& emb);

/// Levenberg-Marquardt on the squared-length residuals with hard gauge rows.
/// Non-convergence is reported, not thrown; the embedding is always returned.
/// Throws Gauge when the gauge edge is missing or degenerate.
RefineResult refine(const Graph& g, const Embedding& emb, const RefineOptions& opts = {});

struct ProjectionOptions {
  int max_iterations = 30;
  double residual_target = 1e-13;
  double damping_init = 1e-8;
  std::vector<DistanceConstraint> extra_constraints;
};

/// Minimum-displacement return to the constraint manifold: the same damped
/// Gauss-Newton iteration without gauge rows, so every step lies in the row
/// space of the Jacobian and carries no rigid or flex component.
RefineResult project_to_manifold(const Graph& g, const Embedding& emb, const ProjectionOptions& opts = {});

/// Default gauge for a graph (vertex 0 and its lowest-indexed neighbor).
Gauge default_gauge(const Graph& g);

}  // namespace matchstick
