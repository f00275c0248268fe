#include "matchstick/geometry.hpp"

#include <algorithm>
#include <queue>
#include <string>

#include "spatial_grid.hpp"

namespace matchstick {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InvalidGraph: return "invalid-graph";
    case ErrorKind::DegenerateInput: return "degenerate-input";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::IndexOutOfRange: return "index-out-of-range";
    case ErrorKind::DuplicateEdge: return "duplicate-edge";
    case ErrorKind::MarkerUnresolved: return "marker-unresolved";
    case ErrorKind::AmbiguousVertices: return "ambiguous-vertices";
    case ErrorKind::Inconsistent: return "inconsistent";
    case ErrorKind::Gauge: return "gauge";
    case ErrorKind::Disconnected: return "disconnected";
    case ErrorKind::NoFlex: return "no-flex";
    case ErrorKind::StepTooLarge: return "step-too-large";
    case ErrorKind::Stall: return "stall";
    case ErrorKind::Budget: return "budget";
    case ErrorKind::Geometry: return "geometry";
    case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

double distance(Point2 p, Point2 q) { return norm(p - q); }

// ---------------------------------------------------------------- Graph

std::uint64_t Graph::key(VertexId a, VertexId b) {
  if (b < a) std::swap(a, b);
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
         static_cast<std::uint32_t>(b);
}

Graph::Graph(std::size_t n_vertices, std::vector<Edge> edges)
    : n_vertices_(n_vertices), edges_(std::move(edges)), adjacency_(n_vertices) {
  lookup_.reserve(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge e = edges_[i];
    if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= n_vertices ||
        static_cast<std::size_t>(e.v) >= n_vertices) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                      ") references a vertex outside [0, " + std::to_string(n_vertices) + ")");
    }
    if (e.u == e.v) {
      throw Error(ErrorKind::InvalidGraph, "self-loop at vertex " + std::to_string(e.u));
    }
    if (!lookup_.emplace(key(e.u, e.v), i).second) {
      throw Error(ErrorKind::DuplicateEdge,
                  "duplicate edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ")");
    }
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
}

bool Graph::has_edge(VertexId a, VertexId b) const { return lookup_.contains(key(a, b)); }

std::optional<std::size_t> Graph::edge_index(VertexId a, VertexId b) const {
  auto it = lookup_.find(key(a, b));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Graph Graph::with_edge(VertexId a, VertexId b) const {
  std::vector<Edge> edges = edges_;
  edges.push_back({a, b});
  return Graph(n_vertices_, std::move(edges));
}

Graph Graph::without_edge(std::size_t index) const {
  if (index >= edges_.size()) throw Error(ErrorKind::IndexOutOfRange, "edge index out of range");
  std::vector<Edge> edges = edges_;
  edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(index));
  return Graph(n_vertices_, std::move(edges));
}

bool Graph::connected() const {
  if (n_vertices_ <= 1) return true;
  std::vector<char> seen(n_vertices_, 0);
  std::queue<VertexId> frontier;
  frontier.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!frontier.empty()) {
    const VertexId v = frontier.front();
    frontier.pop();
    for (VertexId w : adjacency_[v]) {
      if (seen[w]) continue;
      seen[w] = 1;
      ++reached;
      frontier.push(w);
    }
  }
  return reached == n_vertices_;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> out(n_vertices_);
  for (std::size_t v = 0; v < n_vertices_; ++v) out[v] = static_cast<int>(adjacency_[v].size());
  return out;
}

// ---------------------------------------------------------------- Embedding

Embedding::Embedding(std::vector<Point2> positions) : positions_(std::move(positions)) {
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (!positions_[i].finite()) {
      throw Error(ErrorKind::InvalidGraph, "non-finite coordinate at vertex " + std::to_string(i));
    }
  }
}

Eigen::VectorXd Embedding::flatten() const {
  Eigen::VectorXd out(2 * positions_.size());
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    out[2 * i] = positions_[i].x;
    out[2 * i + 1] = positions_[i].y;
  }
  return out;
}

Embedding Embedding::from_flat(const Eigen::Ref<const Eigen::VectorXd>& coords) {
  if (coords.size() % 2 != 0) throw Error(ErrorKind::InvalidArgument, "odd coordinate vector length");
  std::vector<Point2> pts(static_cast<std::size_t>(coords.size() / 2));
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = {coords[2 * i], coords[2 * i + 1]};
  return Embedding(std::move(pts));
}

Embedding Embedding::with_position(std::size_t i, Point2 p) const {
  std::vector<Point2> pts = positions_;
  pts.at(i) = p;
  return Embedding(std::move(pts));
}

Point2 Embedding::centroid() const {
  Point2 c;
  if (positions_.empty()) return c;
  for (const Point2& p : positions_) c = c + p;
  return c / static_cast<double>(positions_.size());
}

// ---------------------------------------------------------------- tolerances

void ToleranceProfile::validate() const {
  const double fields[] = {eps_raw, eps_refined, delta_cross, vertex_sep, snap_tol, rank_tau, sym_tol};
  for (double f : fields) {
    if (!(f > 0.0) || !std::isfinite(f)) {
      throw Error(ErrorKind::InvalidArgument, "tolerances must be finite and strictly positive");
    }
  }
  if (!(eps_refined < eps_raw)) {
    throw Error(ErrorKind::InvalidArgument, "eps_refined must be smaller than eps_raw");
  }
}

// ---------------------------------------------------------------- isometries

Isometry Isometry::rotation(double angle, Point2 center) {
  return {Kind::Rotation, center, angle, {}};
}

Isometry Isometry::reflection(double axis_angle, Point2 through) {
  return {Kind::Reflection, through, axis_angle, {}};
}

Isometry Isometry::translate(Point2 offset) { return {Kind::Identity, {}, 0.0, offset}; }

Eigen::Matrix2d Isometry::linear() const {
  Eigen::Matrix2d m;
  switch (kind) {
    case Kind::Identity:
      m.setIdentity();
      break;
    case Kind::Rotation: {
      const double c = std::cos(angle), s = std::sin(angle);
      m << c, -s, s, c;
      break;
    }
    case Kind::Reflection: {
      const double c = std::cos(2.0 * angle), s = std::sin(2.0 * angle);
      m << c, s, s, -c;
      break;
    }
  }
  return m;
}

Point2 Isometry::apply(Point2 p) const {
  if (kind == Kind::Identity) return p + translation;
  const Eigen::Matrix2d m = linear();
  const Point2 d = p - center;
  return Point2{m(0, 0) * d.x + m(0, 1) * d.y, m(1, 0) * d.x + m(1, 1) * d.y} + center + translation;
}

Isometry Isometry::inverse() const {
  // p -> M(p - c) + c + t inverts to q -> M^-1(q - c) + c - M^-1 t.
  Isometry inv = *this;
  if (kind == Kind::Rotation) inv.angle = -angle;
  const Eigen::Matrix2d m_inv = inv.linear();
  inv.translation = {-(m_inv(0, 0) * translation.x + m_inv(0, 1) * translation.y),
                     -(m_inv(1, 0) * translation.x + m_inv(1, 1) * translation.y)};
  return inv;
}

Embedding apply_isometry(const Isometry& iso, const Embedding& emb) {
  std::vector<Point2> pts;
  pts.reserve(emb.size());
  for (const Point2& p : emb.positions()) pts.push_back(iso.apply(p));
  return Embedding(std::move(pts));
}

// ---------------------------------------------------------------- checks

void check_embedding_shape(const Graph& g, const Embedding& emb) {
  if (emb.size() != g.vertex_count()) {
    throw Error(ErrorKind::InvalidGraph, "embedding has " + std::to_string(emb.size()) +
                                             " positions for " + std::to_string(g.vertex_count()) +
                                             " vertices");
  }
}

std::vector<std::pair<VertexId, VertexId>> close_vertex_pairs(const Embedding& emb,
                                                              double min_separation) {
  std::vector<std::pair<VertexId, VertexId>> out;
  detail::SpatialGrid grid(min_separation);
  for (std::size_t i = 0; i < emb.size(); ++i) grid.insert_point(static_cast<int>(i), emb[i]);
  const Point2 pad{min_separation, min_separation};
  for (std::size_t i = 0; i < emb.size(); ++i) {
    grid.visit_box(emb[i] - pad, emb[i] + pad, [&](int j) {
      if (j <= static_cast<int>(i)) return;
      if (distance(emb[i], emb[j]) <= min_separation) out.emplace_back(static_cast<int>(i), j);
    });
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double max_abs_length_deviation(const Graph& g, const Embedding& emb) {
  double worst = 0.0;
  for (const Edge& e : g.edges()) worst = std::max(worst, std::abs(distance(emb[e.u], emb[e.v]) - 1.0));
  return worst;
}

}  // namespace matchstick
