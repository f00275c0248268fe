#include "matchstick/rigidity.hpp"

#include <limits>

#include <Eigen/SVD>

namespace matchstick {
namespace {

constexpr double kUnrefinedThreshold = 1e-6;
constexpr double kIllConditionedGap = 1e2;

void require_analyzable(const Graph& g, const Embedding& emb) {
  check_embedding_shape(g, emb);
  if (g.vertex_count() < 2) throw Error(ErrorKind::DegenerateInput, "rigidity needs at least 2 vertices");
  if (!g.connected()) {
    throw Error(ErrorKind::Disconnected, "graph is disconnected; analyze each component separately");
  }
}

int dof_from_rank(const Graph& g, int rank) { return static_cast<int>(2 * g.vertex_count()) - 3 - rank; }

Eigen::VectorXd singular_values_of(const Eigen::MatrixXd& m) {
  if (m.rows() == 0 || m.cols() == 0) return Eigen::VectorXd();
  return Eigen::BDCSVD<Eigen::MatrixXd>(m).singularValues();
}

}  // namespace

std::string_view to_string(Classification c) { return c == Classification::Rigid ? "rigid" : "flexible"; }

Eigen::MatrixXd rigidity_matrix(const Graph& g, const Embedding& emb) {
  check_embedding_shape(g, emb);
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(g.edge_count()),
                                            static_cast<Eigen::Index>(2 * g.vertex_count()));
  Eigen::Index k = 0;
  for (const Edge& e : g.edges()) {
    const Point2 d = emb[e.u] - emb[e.v];
    r(k, 2 * e.u) = d.x;
    r(k, 2 * e.u + 1) = d.y;
    r(k, 2 * e.v) = -d.x;
    r(k, 2 * e.v + 1) = -d.y;
    ++k;
  }
  return r;
}

int numerical_rank(const Eigen::VectorXd& singular_values, double tau) {
  if (singular_values.size() == 0) return 0;
  const double cutoff = tau * singular_values.maxCoeff();
  int rank = 0;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i)
    if (singular_values[i] > cutoff) ++rank;
  return rank;
}

Eigen::MatrixXd trivial_motions(const Embedding& emb) {
  const auto n = static_cast<Eigen::Index>(emb.size());
  const Point2 c = emb.centroid();
  Eigen::MatrixXd t(2 * n, 3);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Point2 p = emb[static_cast<std::size_t>(i)] - c;
    t.row(2 * i) << 1.0, 0.0, -p.y;
    t.row(2 * i + 1) << 0.0, 1.0, p.x;
  }
  // Translations are orthogonal to the centroid rotation already; normalize.
  for (Eigen::Index j = 0; j < 3; ++j) {
    const double len = t.col(j).norm();
    if (len > 0.0) t.col(j) /= len;
  }
  return t;
}

RigidityReport analyze(const Graph& g, const Embedding& emb, const ToleranceProfile& tol) {
  require_analyzable(g, emb);
  tol.validate();

  RigidityReport report;
  report.unrefined = max_abs_length_deviation(g, emb) > kUnrefinedThreshold;

  const Eigen::MatrixXd r = rigidity_matrix(g, emb);
  const Eigen::Index cols = r.cols();
  Eigen::BDCSVD<Eigen::MatrixXd> svd(r, Eigen::ComputeFullV);
  const Eigen::VectorXd sigma = svd.singularValues();
  report.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
  report.rank = numerical_rank(sigma, tol.rank_tau);
  report.internal_dof = std::max(0, dof_from_rank(g, report.rank));
  report.classification = report.internal_dof == 0 ? Classification::Rigid : Classification::Flexible;

  if (report.rank == 0 || report.rank >= sigma.size() || sigma[report.rank] == 0.0) {
    report.gap_ratio = std::numeric_limits<double>::infinity();
  } else {
    report.gap_ratio = sigma[report.rank - 1] / sigma[report.rank];
  }
  report.ill_conditioned = report.gap_ratio < kIllConditionedGap;

  if (report.internal_dof > 0) {
    const Eigen::MatrixXd null_space = svd.matrixV().rightCols(cols - report.rank);
    const Eigen::MatrixXd t = trivial_motions(emb);
    const Eigen::MatrixXd projected = null_space - t * (t.transpose() * null_space);
    Eigen::BDCSVD<Eigen::MatrixXd> inner(projected, Eigen::ComputeThinU);
    for (int k = 0; k < report.internal_dof; ++k) {
      Eigen::VectorXd f = inner.matrixU().col(k);
      f -= t * (t.transpose() * f);
      f.normalize();
      Eigen::Index at = 0;
      f.cwiseAbs().maxCoeff(&at);
      if (f[at] < 0.0) f = -f;
      report.flex_basis.push_back(std::move(f));
    }
  }
  return report;
}

CriticalityScan criticality_scan(const Graph& g, const Embedding& emb, const ToleranceProfile& tol) {
  require_analyzable(g, emb);
  tol.validate();

  const Eigen::MatrixXd r = rigidity_matrix(g, emb);
  CriticalityScan scan;
  scan.rank = numerical_rank(singular_values_of(r), tol.rank_tau);
  scan.internal_dof = std::max(0, dof_from_rank(g, scan.rank));
  scan.redundancy = static_cast<int>(g.edge_count()) - scan.rank;

  const Eigen::Index rows = r.rows();
  for (Eigen::Index k = 0; k < rows; ++k) {
    Eigen::MatrixXd reduced(rows - 1, r.cols());
    reduced.topRows(k) = r.topRows(k);
    reduced.bottomRows(rows - 1 - k) = r.bottomRows(rows - 1 - k);
    const int rank = numerical_rank(singular_values_of(reduced), tol.rank_tau);
    if (rank > scan.rank || rank < scan.rank - 1) {
      throw Error(ErrorKind::Internal, "rank changed by more than one when removing edge " + std::to_string(k));
    }
    scan.edges.push_back({static_cast<std::size_t>(k), std::max(0, dof_from_rank(g, rank))});
  }
  return scan;
}

}  // namespace matchstick
