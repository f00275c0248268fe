#include "matchstick/verifier.hpp"

#include <algorithm>
#include <set>

#include "spatial_grid.hpp"

namespace matchstick {
namespace {

double segment_clearance(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double o1 = cross(b - a, c - a);
  const double o2 = cross(b - a, d - a);
  const double o3 = cross(d - c, a - c);
  const double o4 = cross(d - c, b - c);
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) {
    return 0.0;
  }
  return std::min({detail::point_segment_distance(a, c, d), detail::point_segment_distance(b, c, d),
                   detail::point_segment_distance(c, a, b), detail::point_segment_distance(d, a, b)});
}

void require_vertices(const Graph& g) {
  if (g.vertex_count() < 2) {
    throw Error(ErrorKind::DegenerateInput, "verification needs at least 2 vertices");
  }
}

}  // namespace

UnitLengthCheck check_unit_lengths(const Graph& g, const Embedding& emb, double eps) {
  check_embedding_shape(g, emb);
  UnitLengthCheck out;
  out.deviations.reserve(g.edge_count());
  for (const Edge& e : g.edges()) {
    const double dev = std::abs(distance(emb[e.u], emb[e.v]) - 1.0);
    out.deviations.push_back(dev);
    out.max_deviation = std::max(out.max_deviation, dev);
  }
  out.ok = out.max_deviation <= eps;
  return out;
}

CrossingCheck check_noncrossing(const Graph& g, const Embedding& emb, double delta_cross) {
  check_embedding_shape(g, emb);
  const auto edges = g.edges();
  const Point2 pad{delta_cross, delta_cross};

  detail::SpatialGrid grid(1.0);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Point2 a = emb[edges[i].u], b = emb[edges[i].v];
    grid.insert_box(static_cast<int>(i), Point2{std::min(a.x, b.x), std::min(a.y, b.y)} - pad,
                    Point2{std::max(a.x, b.x), std::max(a.y, b.y)} + pad);
  }

  std::set<std::pair<int, int>> candidates;
  grid.visit_cells([&](const std::vector<int>& items) {
    for (std::size_t p = 0; p < items.size(); ++p)
      for (std::size_t q = p + 1; q < items.size(); ++q)
        candidates.insert({std::min(items[p], items[q]), std::max(items[p], items[q])});
  });

  CrossingCheck out;
  for (const auto& [i, j] : candidates) {
    const Edge ei = edges[i], ej = edges[j];
    double clearance;
    if (ei.touches(ej.u) || ei.touches(ej.v)) {
      const VertexId shared = ei.touches(ej.u) ? ej.u : ej.v;
      const Point2 v = emb[shared];
      const Point2 a = emb[ei.other(shared)];
      const Point2 b = emb[ej.other(shared)];
      clearance = std::min(detail::point_segment_distance(a, v, b), detail::point_segment_distance(b, v, a));
    } else {
      clearance = segment_clearance(emb[ei.u], emb[ei.v], emb[ej.u], emb[ej.v]);
    }
    if (clearance <= delta_cross) out.edge_pairs.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), clearance});
  }

  for (std::size_t w = 0; w < emb.size(); ++w) {
    std::set<int> near;
    grid.visit_box(emb[w] - pad, emb[w] + pad, [&](int e) { near.insert(e); });
    for (int e : near) {
      const Edge edge = edges[e];
      if (edge.touches(static_cast<VertexId>(w))) continue;
      const double d = detail::point_segment_distance(emb[w], emb[edge.u], emb[edge.v]);
      if (d <= delta_cross) out.vertex_edges.push_back({static_cast<VertexId>(w), static_cast<std::size_t>(e), d});
    }
  }
  out.ok = out.edge_pairs.empty() && out.vertex_edges.empty();
  return out;
}

std::pair<bool, DegreeProfile> degree_profile(const Graph& g, int m, int n) {
  if (m > n) throw Error(ErrorKind::InvalidArgument, "degree profile needs m <= n");
  DegreeProfile profile{m, n, {}};
  bool ok = true;
  for (int d : g.degrees()) {
    ++profile.counts[d];
    if (d != m && d != n) ok = false;
  }
  return {ok, profile};
}

std::size_t expected_high_degree_count(std::size_t n_vertices, std::size_t n_edges, int m, int n) {
  if (!(n > m)) throw Error(ErrorKind::InvalidArgument, "expected_high_degree_count needs n > m");
  const long long excess = 2LL * static_cast<long long>(n_edges) - static_cast<long long>(m) * static_cast<long long>(n_vertices);
  const long long step = n - m;
  if (excess < 0 || excess % step != 0) {
    throw Error(ErrorKind::Inconsistent, "(|V|, |E|) = (" + std::to_string(n_vertices) + ", " +
                                             std::to_string(n_edges) + ") admits no (" +
                                             std::to_string(m) + "," + std::to_string(n) +
                                             ")-regular degree split");
  }
  const long long high = excess / step;
  if (high > static_cast<long long>(n_vertices)) {
    throw Error(ErrorKind::Inconsistent, "more degree-n vertices than vertices");
  }
  return static_cast<std::size_t>(high);
}

VerificationCertificate verify_matchstick(const Graph& g, const Embedding& emb, int m, int n,
                                          const ToleranceProfile& tol, std::optional<double> eps) {
  require_vertices(g);
  check_embedding_shape(g, emb);
  tol.validate();

  VerificationCertificate cert;
  const UnitLengthCheck unit = check_unit_lengths(g, emb, eps.value_or(tol.eps_raw));
  cert.unit_ok = unit.ok && g.edge_count() > 0;
  cert.max_abs_length_deviation = unit.max_deviation;

  CrossingCheck crossing = check_noncrossing(g, emb, tol.delta_cross);
  cert.crossing_ok = crossing.ok;
  cert.violating_edge_pairs = std::move(crossing.edge_pairs);
  cert.vertex_edge_violations = std::move(crossing.vertex_edges);

  std::tie(cert.degrees_ok, cert.degree_profile) = degree_profile(g, m, n);
  cert.connected = g.connected();

  cert.close_pairs = close_vertex_pairs(emb, tol.vertex_sep);
  cert.separation_ok = cert.close_pairs.empty();

  cert.overall = cert.unit_ok && cert.crossing_ok && cert.degrees_ok && cert.connected && cert.separation_ok;
  return cert;
}

PatchReport verify_patch(const Graph& g, const Embedding& emb, int m, int n,
                         const ToleranceProfile& tol, std::optional<double> eps) {
  require_vertices(g);
  check_embedding_shape(g, emb);
  tol.validate();
  if (m > n) throw Error(ErrorKind::InvalidArgument, "degree profile needs m <= n");

  PatchReport out;
  const UnitLengthCheck unit = check_unit_lengths(g, emb, eps.value_or(tol.eps_raw));
  out.unit_ok = unit.ok && g.edge_count() > 0;
  out.max_abs_length_deviation = unit.max_deviation;

  CrossingCheck crossing = check_noncrossing(g, emb, tol.delta_cross);
  out.crossing_ok = crossing.ok;
  out.violating_edge_pairs = std::move(crossing.edge_pairs);
  out.vertex_edge_violations = std::move(crossing.vertex_edges);

  out.separation_ok = close_vertex_pairs(emb, tol.vertex_sep).empty();

  out.interior_degrees_ok = true;
  const std::vector<int> degrees = g.degrees();
  for (std::size_t v = 0; v < degrees.size(); ++v) {
    const int d = degrees[v];
    if (d < m) {
      out.boundary_vertices.push_back(static_cast<VertexId>(v));
      continue;
    }
    ++out.interior_degrees[d];
    if (d != m && d != n) out.interior_degrees_ok = false;
  }
  out.boundary_count = out.boundary_vertices.size();
  out.overall = out.unit_ok && out.crossing_ok && out.separation_ok && out.interior_degrees_ok;
  return out;
}

}  // namespace matchstick
