#include "matchstick/refiner.hpp"

#include <Eigen/SparseCholesky>

namespace matchstick {
namespace {

struct GaugeRows {
  Gauge gauge;
  Point2 anchor;
  Point2 direction;  // unit
};

class ConstraintSystem {
 public:
  ConstraintSystem(const Graph& g, std::span<const DistanceConstraint> extra, std::optional<GaugeRows> gauge)
      : g_(g), extra_(extra), gauge_(gauge) {}

  Eigen::Index constraint_rows() const {
    return static_cast<Eigen::Index>(g_.edge_count() + extra_.size());
  }
  Eigen::Index rows() const { return constraint_rows() + (gauge_ ? 3 : 0); }

  Eigen::VectorXd evaluate(const Eigen::VectorXd& x) const {
    Eigen::VectorXd r(rows());
    Eigen::Index k = 0;
    for (const Edge& e : g_.edges()) r[k++] = squared(x, e.u, e.v) - 1.0;
    for (const DistanceConstraint& c : extra_) r[k++] = squared(x, c.a, c.b) - c.target * c.target;
    if (gauge_) {
      const int p = gauge_->gauge.pinned, q = gauge_->gauge.toward;
      r[k++] = x[2 * p] - gauge_->anchor.x;
      r[k++] = x[2 * p + 1] - gauge_->anchor.y;
      const Point2 pq{x[2 * q] - x[2 * p], x[2 * q + 1] - x[2 * p + 1]};
      r[k++] = cross(gauge_->direction, pq);
    }
    return r;
  }

  Eigen::SparseMatrix<double> jacobian(const Eigen::VectorXd& x) const {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(static_cast<std::size_t>(rows()) * 4);
    Eigen::Index k = 0;
    auto pair_row = [&](VertexId a, VertexId b) {
      const double dx = 2.0 * (x[2 * a] - x[2 * b]);
      const double dy = 2.0 * (x[2 * a + 1] - x[2 * b + 1]);
      trip.emplace_back(k, 2 * a, dx);
      trip.emplace_back(k, 2 * a + 1, dy);
      trip.emplace_back(k, 2 * b, -dx);
      trip.emplace_back(k, 2 * b + 1, -dy);
      ++k;
    };
    for (const Edge& e : g_.edges()) pair_row(e.u, e.v);
    for (const DistanceConstraint& c : extra_) pair_row(c.a, c.b);
    if (gauge_) {
      const int p = gauge_->gauge.pinned, q = gauge_->gauge.toward;
      const Point2 u = gauge_->direction;
      trip.emplace_back(k++, 2 * p, 1.0);
      trip.emplace_back(k++, 2 * p + 1, 1.0);
      // d/dq cross(u, q - p) = (-u.y, u.x)
      trip.emplace_back(k, 2 * q, -u.y);
      trip.emplace_back(k, 2 * q + 1, u.x);
      trip.emplace_back(k, 2 * p, u.y);
      trip.emplace_back(k, 2 * p + 1, -u.x);
      ++k;
    }
    Eigen::SparseMatrix<double> j(rows(), static_cast<Eigen::Index>(2 * g_.vertex_count()));
    j.setFromTriplets(trip.begin(), trip.end());
    return j;
  }

  double max_constraint_residual(const Eigen::VectorXd& r) const {
    const Eigen::Index n = constraint_rows();
    return n == 0 ? 0.0 : r.head(n).cwiseAbs().maxCoeff();
  }

 private:
  static double squared(const Eigen::VectorXd& x, VertexId a, VertexId b) {
    const double dx = x[2 * a] - x[2 * b], dy = x[2 * a + 1] - x[2 * b + 1];
    return dx * dx + dy * dy;
  }

  const Graph& g_;
  std::span<const DistanceConstraint> extra_;
  std::optional<GaugeRows> gauge_;
};

struct LmSettings {
  int max_iterations;
  double residual_target;
  double damping_init;
};

RefineResult levenberg_marquardt(const ConstraintSystem& sys, const Embedding& start, const LmSettings& s) {
  const Eigen::VectorXd x0 = start.flatten();
  Eigen::VectorXd x = x0;
  Eigen::VectorXd r = sys.evaluate(x);
  double cost = r.squaredNorm();
  double lambda = s.damping_init;
  constexpr double kMinDamping = 1e-12;
  constexpr double kMaxDamping = 1e16;

  RefineReport report;
  const Eigen::Index n = x.size();
  Eigen::SparseMatrix<double> identity(n, n);
  identity.setIdentity();
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;

  while (sys.max_constraint_residual(r) > s.residual_target && report.iterations < s.max_iterations) {
    const Eigen::SparseMatrix<double> j = sys.jacobian(x);
    const Eigen::SparseMatrix<double> normal = Eigen::SparseMatrix<double>(j.transpose()) * j;
    const Eigen::VectorXd gradient = j.transpose() * r;

    bool accepted = false;
    while (!accepted && report.iterations < s.max_iterations && lambda <= kMaxDamping) {
      ++report.iterations;
      solver.compute(normal + lambda * identity);
      if (solver.info() != Eigen::Success) {
        lambda *= 10.0;
        continue;
      }
      const Eigen::VectorXd step = solver.solve(-gradient);
      const Eigen::VectorXd candidate = x + step;
      const Eigen::VectorXd r_new = sys.evaluate(candidate);
      const double cost_new = r_new.squaredNorm();
      if (step.allFinite() && cost_new < cost) {
        x = candidate;
        r = r_new;
        cost = cost_new;
        lambda = std::max(lambda / 10.0, kMinDamping);
        accepted = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!accepted) break;
  }

  report.final_max_abs_residual = sys.max_constraint_residual(r);
  report.converged = report.final_max_abs_residual <= s.residual_target;
  for (Eigen::Index i = 0; i < n / 2; ++i) {
    report.displacement_max =
        std::max(report.displacement_max, std::hypot(x[2 * i] - x0[2 * i], x[2 * i + 1] - x0[2 * i + 1]));
  }
  return {Embedding::from_flat(x), report};
}

void check_constraints(const Graph& g, std::span<const DistanceConstraint> extra) {
  const auto n = static_cast<VertexId>(g.vertex_count());
  for (const DistanceConstraint& c : extra) {
    if (c.a < 0 || c.b < 0 || c.a >= n || c.b >= n) {
      throw Error(ErrorKind::IndexOutOfRange, "distance constraint references an unknown vertex");
    }
    if (c.a == c.b || !(c.target > 0.0)) {
      throw Error(ErrorKind::InvalidArgument, "distance constraint needs distinct vertices and a positive target");
    }
  }
}

}  // namespace

Eigen::VectorXd residuals(const Graph& g, const Embedding& emb) {
  check_embedding_shape(g, emb);
  return ConstraintSystem(g, {}, std::nullopt).evaluate(emb.flatten());
}

Eigen::SparseMatrix<double> jacobian(const Graph& g, const Embedding& emb) {
  check_embedding_shape(g, emb);
  return ConstraintSystem(g, {}, std::nullopt).jacobian(emb.flatten());
}

Gauge default_gauge(const Graph& g) {
  if (g.vertex_count() == 0 || g.degree(0) == 0) {
    throw Error(ErrorKind::Gauge, "default gauge needs vertex 0 to have a neighbor");
  }
  return {0, g.neighbors(0).front()};
}

RefineResult refine(const Graph& g, const Embedding& emb, const RefineOptions& opts) {
  check_embedding_shape(g, emb);
  if (g.edge_count() == 0) throw Error(ErrorKind::DegenerateInput, "refinement needs at least one edge");
  check_constraints(g, opts.extra_constraints);

  const Gauge gauge = opts.gauge ? *opts.gauge : default_gauge(g);
  const auto n = static_cast<VertexId>(g.vertex_count());
  if (gauge.pinned < 0 || gauge.toward < 0 || gauge.pinned >= n || gauge.toward >= n ||
      !g.has_edge(gauge.pinned, gauge.toward)) {
    throw Error(ErrorKind::Gauge, "gauge must be an edge of the graph");
  }
  const Point2 dir = emb[gauge.toward] - emb[gauge.pinned];
  if (!(norm(dir) > 0.0)) throw Error(ErrorKind::Gauge, "gauge edge has zero length");

  const ConstraintSystem sys(g, opts.extra_constraints, GaugeRows{gauge, emb[gauge.pinned], dir / norm(dir)});
  return levenberg_marquardt(sys, emb, {opts.max_iterations, opts.residual_target, opts.damping_init});
}

RefineResult project_to_manifold(const Graph& g, const Embedding& emb, const ProjectionOptions& opts) {
  check_embedding_shape(g, emb);
  check_constraints(g, opts.extra_constraints);
  const ConstraintSystem sys(g, opts.extra_constraints, std::nullopt);
  return levenberg_marquardt(sys, emb, {opts.max_iterations, opts.residual_target, opts.damping_init});
}

}  // namespace matchstick
