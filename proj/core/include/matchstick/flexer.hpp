#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "matchstick/geometry.hpp"

namespace matchstick {

/// A point on the unit-length constraint manifold plus continuation state.
struct FlexState {
  Embedding embedding;
  double arclength = 0.0;
  Eigen::VectorXd last_direction;  // empty before the first step
};

/// Event function: distance between two vertices compared against a target.
struct Monitor {
  VertexId a = 0;
  VertexId b = 1;
  double target = 2.0;
};

struct FlexOptions {
  double step_init = 1e-2;
  double step_min = 1e-6;
  double step_max = 0.1;
  double corrector_tol = 1e-12;  // max |len^2 - 1| after correction
  long max_steps = 100000;
  int crossing_check_every = 0;  // 0: check crossings only at the event
  double event_tol = 1e-9;
  double delta_cross = 1e-7;

  void validate() const;
};

struct TraceRow {
  long step = 0;
  double arclength = 0.0;
  double monitor = 0.0;
  double max_residual = 0.0;  // max |len - 1|
  std::optional<bool> crossing_free;  // only where checked
};

struct SteerResult {
  FlexState state;
  std::vector<TraceRow> trace;
  bool event_crossing_free = false;
};

double monitor_value(const Embedding& emb, const Monitor& monitor);

/// Unit-norm projection of `direction` onto the internal flex space at the
/// state. Throws NoFlex for infinitesimally rigid graphs and Stall when the
/// projection vanishes.
Eigen::VectorXd project_to_flex_space(const Graph& g, const Embedding& emb, const Eigen::VectorXd& direction);

/// Predictor x + h d followed by a minimum-displacement Newton correction.
/// Requires ||d|| = 1 and d in the flex space (||R d|| <= 1e-6). The stored
/// tangent is the flex-space projection of d at the new point, oriented to
/// agree with d. Throws NoFlex on rigid graphs and StepTooLarge when the
/// corrector fails (callers halve h).
FlexState flex_step(const Graph& g, const FlexState& state, const Eigen::VectorXd& direction, double h,
                    const FlexOptions& opts = {});

/// Follows the manifold along the projected monitor gradient until the pair
/// distance reaches the target, bisecting the final step down to
/// |distance - target| <= opts.event_tol.
SteerResult steer_to_event(const Graph& g, const FlexState& start, const Monitor& monitor,
                           const FlexOptions& opts = {});

/// CSV with header "step,arclength,monitor,max_residual".
std::string trace_to_csv(const std::vector<TraceRow>& trace);

}  // namespace matchstick
