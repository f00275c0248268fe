#include "matchstick/flexer.hpp"

#include <cmath>
#include <sstream>

#include "matchstick/refiner.hpp"
#include "matchstick/rigidity.hpp"
#include "matchstick/verifier.hpp"

namespace matchstick {
namespace {

constexpr double kDirectionResidual = 1e-6;
constexpr double kStallNorm = 1e-10;
constexpr int kCorrectorIterations = 30;
constexpr int kMaxBisections = 200;

Eigen::MatrixXd flex_space(const Graph& g, const Embedding& emb) {
  const RigidityReport report = analyze(g, emb);
  if (report.internal_dof == 0) throw Error(ErrorKind::NoFlex, "graph is infinitesimally rigid; nothing to flex");
  Eigen::MatrixXd basis(static_cast<Eigen::Index>(2 * emb.size()), report.internal_dof);
  for (int k = 0; k < report.internal_dof; ++k) basis.col(k) = report.flex_basis[static_cast<std::size_t>(k)];
  return basis;
}

struct StepOutcome {
  FlexState state;
  int corrector_iterations = 0;
};

// Predictor-corrector without validation of the direction.
StepOutcome advance(const Graph& g, const FlexState& state, const Eigen::VectorXd& direction, double h,
                    const FlexOptions& opts) {
  const Eigen::VectorXd predicted = state.embedding.flatten() + h * direction;
  ProjectionOptions popts;
  popts.max_iterations = kCorrectorIterations;
  popts.residual_target = opts.corrector_tol;
  const RefineResult corrected = project_to_manifold(g, Embedding::from_flat(predicted), popts);
  if (!corrected.report.converged) {
    throw Error(ErrorKind::StepTooLarge, "corrector did not converge for step " + std::to_string(h));
  }
  // A correction larger than the step itself means the corrector jumped
  // to another part of the manifold.
  if (corrected.report.displacement_max > std::max(std::abs(h), 1e-12)) {
    throw Error(ErrorKind::StepTooLarge, "corrector moved farther than the step " + std::to_string(h));
  }
  FlexState next;
  next.embedding = corrected.embedding;
  next.arclength = state.arclength + std::abs(h);
  next.last_direction = direction;
  return {std::move(next), corrected.report.iterations};
}

Eigen::VectorXd monitor_gradient(const Embedding& emb, const Monitor& monitor) {
  Eigen::VectorXd grad = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(2 * emb.size()));
  const Point2 d = emb[monitor.a] - emb[monitor.b];
  const double len = norm(d);
  if (len == 0.0) return grad;
  grad[2 * monitor.a] = d.x / len;
  grad[2 * monitor.a + 1] = d.y / len;
  grad[2 * monitor.b] = -d.x / len;
  grad[2 * monitor.b + 1] = -d.y / len;
  return grad;
}

TraceRow make_row(const Graph& g, long step, const FlexState& s, const Monitor& monitor, bool check_crossing,
                  double delta_cross) {
  TraceRow row{step, s.arclength, monitor_value(s.embedding, monitor), max_abs_length_deviation(g, s.embedding),
               std::nullopt};
  if (check_crossing) row.crossing_free = check_noncrossing(g, s.embedding, delta_cross).ok;
  return row;
}

}  // namespace

void FlexOptions::validate() const {
  if (!(step_min > 0.0 && step_init > 0.0 && step_max > 0.0 && corrector_tol > 0.0 && event_tol > 0.0 &&
        max_steps > 0 && crossing_check_every >= 0)) {
    throw Error(ErrorKind::InvalidArgument, "flex options must be positive");
  }
  if (!(step_min <= step_init && step_init <= step_max)) {
    throw Error(ErrorKind::InvalidArgument, "flex options need step_min <= step_init <= step_max");
  }
}

double monitor_value(const Embedding& emb, const Monitor& monitor) {
  if (monitor.a < 0 || monitor.b < 0 || static_cast<std::size_t>(monitor.a) >= emb.size() ||
      static_cast<std::size_t>(monitor.b) >= emb.size()) {
    throw Error(ErrorKind::IndexOutOfRange, "monitor references an unknown vertex");
  }
  if (monitor.a == monitor.b) throw Error(ErrorKind::InvalidArgument, "monitor needs two distinct vertices");
  return distance(emb[monitor.a], emb[monitor.b]);
}

Eigen::VectorXd project_to_flex_space(const Graph& g, const Embedding& emb, const Eigen::VectorXd& direction) {
  check_embedding_shape(g, emb);
  if (direction.size() != static_cast<Eigen::Index>(2 * emb.size())) {
    throw Error(ErrorKind::InvalidArgument, "direction must have 2|V| entries");
  }
  const Eigen::MatrixXd basis = flex_space(g, emb);
  Eigen::VectorXd t = basis * (basis.transpose() * direction);
  const double len = t.norm();
  if (len < kStallNorm) throw Error(ErrorKind::Stall, "direction is orthogonal to the flex space");
  return t / len;
}

FlexState flex_step(const Graph& g, const FlexState& state, const Eigen::VectorXd& direction, double h,
                    const FlexOptions& opts) {
  check_embedding_shape(g, state.embedding);
  opts.validate();
  if (direction.size() != static_cast<Eigen::Index>(2 * g.vertex_count())) {
    throw Error(ErrorKind::InvalidArgument, "direction must have 2|V| entries");
  }
  const Eigen::MatrixXd basis = flex_space(g, state.embedding);
  if (h == 0.0) return state;
  if (std::abs(direction.norm() - 1.0) > 1e-9) throw Error(ErrorKind::InvalidArgument, "direction must have unit norm");
  if ((rigidity_matrix(g, state.embedding) * direction).norm() > kDirectionResidual) {
    throw Error(ErrorKind::InvalidArgument, "direction is not an infinitesimal flex at this state");
  }

  FlexState next = advance(g, state, direction, h, opts).state;
  // Carry the tangent over to the new point, keeping its orientation.
  const Eigen::MatrixXd next_basis = flex_space(g, next.embedding);
  Eigen::VectorXd tangent = next_basis * (next_basis.transpose() * direction);
  if (tangent.norm() > kStallNorm) {
    tangent.normalize();
    if (tangent.dot(direction) < 0.0) tangent = -tangent;
    next.last_direction = tangent;
  }
  return next;
}

SteerResult steer_to_event(const Graph& g, const FlexState& start, const Monitor& monitor, const FlexOptions& opts) {
  check_embedding_shape(g, start.embedding);
  opts.validate();

  SteerResult result;
  result.state = start;
  long step = 0;
  result.trace.push_back(make_row(g, step, start, monitor, opts.crossing_check_every > 0, opts.delta_cross));

  double value = monitor_value(start.embedding, monitor);
  if (std::abs(value - monitor.target) <= opts.event_tol) {
    result.event_crossing_free = check_noncrossing(g, start.embedding, opts.delta_cross).ok;
    result.trace.back().crossing_free = result.event_crossing_free;
    return result;
  }

  double h = opts.step_init;
  FlexState current = start;
  while (true) {
    if (step >= opts.max_steps) throw Error(ErrorKind::Budget, "step budget exhausted before reaching the event");

    const Eigen::MatrixXd basis = flex_space(g, current.embedding);
    const Eigen::VectorXd grad = monitor_gradient(current.embedding, monitor);
    Eigen::VectorXd tangent = basis * (basis.transpose() * grad);
    if (tangent.norm() < kStallNorm) {
      throw Error(ErrorKind::Stall, "monitor gradient is orthogonal to the flex space");
    }
    tangent.normalize();
    const double side = value < monitor.target ? 1.0 : -1.0;
    const Eigen::VectorXd direction = side * tangent;

    StepOutcome outcome;
    while (true) {
      try {
        outcome = advance(g, current, direction, h, opts);
        break;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::StepTooLarge) throw;
        h /= 2.0;
        if (h < opts.step_min) {
          throw Error(ErrorKind::StepTooLarge, "step size fell below step_min before reaching the event");
        }
      }
    }

    const double next_value = monitor_value(outcome.state.embedding, monitor);
    const bool crossed = (next_value - monitor.target) * (value - monitor.target) <= 0.0;
    if (crossed) {
      // Bisect on the step length from the current state.
      double lo = 0.0, hi = h;
      FlexState event = outcome.state;
      double event_value = next_value;
      for (int it = 0; it < kMaxBisections && std::abs(event_value - monitor.target) > opts.event_tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        FlexState probe = advance(g, current, direction, mid, opts).state;
        const double probe_value = monitor_value(probe.embedding, monitor);
        if ((probe_value - monitor.target) * (value - monitor.target) > 0.0) {
          lo = mid;
        } else {
          hi = mid;
        }
        event = std::move(probe);
        event_value = probe_value;
      }
      if (std::abs(event_value - monitor.target) > opts.event_tol) {
        throw Error(ErrorKind::Budget, "bisection did not resolve the event");
      }
      ++step;
      result.state = std::move(event);
      result.event_crossing_free = check_noncrossing(g, result.state.embedding, opts.delta_cross).ok;
      TraceRow row = make_row(g, step, result.state, monitor, false, opts.delta_cross);
      row.crossing_free = result.event_crossing_free;
      result.trace.push_back(row);
      return result;
    }

    ++step;
    current = std::move(outcome.state);
    value = next_value;
    const bool check = opts.crossing_check_every > 0 && step % opts.crossing_check_every == 0;
    result.trace.push_back(make_row(g, step, current, monitor, check, opts.delta_cross));
    if (outcome.corrector_iterations <= 4) h = std::min(2.0 * h, opts.step_max);
  }
}

std::string trace_to_csv(const std::vector<TraceRow>& trace) {
  std::ostringstream out;
  out.precision(17);
  out << "step,arclength,monitor,max_residual\n";
  for (const TraceRow& row : trace) {
    out << row.step << ',' << row.arclength << ',' << row.monitor << ',' << row.max_residual << '\n';
  }
  return out.str();
}

}  // namespace matchstick
