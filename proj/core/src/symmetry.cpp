#include "matchstick/symmetry.hpp"

#include <algorithm>
#include <cmath>

#include "spatial_grid.hpp"

namespace matchstick {
namespace {

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  return a < 0.0 ? a + 2.0 * kPi : a;
}

double wrap_half_turn(double a) {
  a = std::fmod(a, kPi);
  if (a < 0.0) a += kPi;
  return a >= kPi ? a - kPi : a;
}

}  // namespace

std::optional<std::vector<VertexId>> induced_permutation(const Graph& g, const Embedding& emb, const Isometry& iso,
                                                         double sym_tol) {
  check_embedding_shape(g, emb);
  if (!(sym_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "sym_tol must be positive");
  const std::size_t n = emb.size();
  detail::SpatialGrid grid(std::max(sym_tol, 1e-3));
  for (std::size_t i = 0; i < n; ++i) grid.insert_point(static_cast<int>(i), emb[i]);

  std::vector<VertexId> perm(n, -1);
  std::vector<char> taken(n, 0);
  const Point2 reach{sym_tol, sym_tol};
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 image = iso.apply(emb[i]);
    int best = -1;
    double best_d = sym_tol;
    grid.visit_box(image - reach, image + reach, [&](int j) {
      const double d = distance(image, emb[static_cast<std::size_t>(j)]);
      if (d <= best_d) {
        best_d = d;
        best = j;
      }
    });
    if (best < 0 || taken[static_cast<std::size_t>(best)]) return std::nullopt;
    taken[static_cast<std::size_t>(best)] = 1;
    perm[i] = best;
  }
  // Injective on vertices and edge-count preserving, so edges-to-edges is a bijection.
  for (const Edge& e : g.edges())
    if (!g.has_edge(perm[e.u], perm[e.v])) return std::nullopt;
  return perm;
}

bool is_automorphism(const Graph& g, const Embedding& emb, const Isometry& iso, double sym_tol) {
  return induced_permutation(g, emb, iso, sym_tol).has_value();
}

SymmetryGroup detect_symmetries(const Graph& g, const Embedding& emb, double sym_tol) {
  check_embedding_shape(g, emb);
  if (!(sym_tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "sym_tol must be positive");
  SymmetryGroup group;
  if (emb.size() == 0) return group;
  const Point2 c = emb.centroid();
  group.center = c;

  std::vector<double> radius(emb.size());
  for (std::size_t i = 0; i < emb.size(); ++i) radius[i] = distance(emb[i], c);
  const auto far = std::max_element(radius.begin(), radius.end());
  const std::size_t v0 = static_cast<std::size_t>(far - radius.begin());
  if (*far <= sym_tol) return group;
  const Point2 p0 = emb[v0] - c;
  const double theta0 = std::atan2(p0.y, p0.x);

  // Any symmetry sends v0 to a vertex at the same radius, so these candidates
  // cover the whole group.
  std::vector<double> rotations;
  std::vector<double> mirrors;
  for (std::size_t w = 0; w < emb.size(); ++w) {
    if (std::abs(radius[w] - radius[v0]) > sym_tol) continue;
    const Point2 pw = emb[w] - c;
    const double theta_w = std::atan2(pw.y, pw.x);
    const double rot = wrap_angle(theta_w - theta0);
    if (w == v0) {
      rotations.push_back(0.0);
    } else if (is_automorphism(g, emb, Isometry::rotation(rot, c), sym_tol)) {
      rotations.push_back(rot);
    }
    const double axis = wrap_half_turn(0.5 * (theta0 + theta_w));
    if (is_automorphism(g, emb, Isometry::reflection(axis, c), sym_tol)) mirrors.push_back(axis);
  }

  group.rotation_order = static_cast<int>(rotations.size());
  std::sort(mirrors.begin(), mirrors.end());
  group.mirror_angles = mirrors;
  group.mirror_count = static_cast<int>(mirrors.size());
  const int k = group.rotation_order;
  if (k > 1) group.generators.push_back(Isometry::rotation(2.0 * kPi / k, c));
  if (!mirrors.empty()) group.generators.push_back(Isometry::reflection(mirrors.front(), c));
  group.classification = (group.mirror_count > 0 ? "D_" : "C_") + std::to_string(k);
  return group;
}

std::vector<Isometry> group_elements(const SymmetryGroup& group) {
  std::vector<Isometry> out;
  const int k = std::max(1, group.rotation_order);
  for (int j = 0; j < k; ++j) out.push_back(j == 0 ? Isometry::identity() : Isometry::rotation(2.0 * kPi * j / k, group.center));
  if (group.mirror_count > 0) {
    const double base = group.mirror_angles.empty() ? 0.0 : group.mirror_angles.front();
    for (int j = 0; j < group.mirror_count; ++j) out.push_back(Isometry::reflection(base + kPi * j / k, group.center));
  }
  return out;
}

Embedding symmetrize(const Graph& g, const Embedding& emb, const SymmetryGroup& group, double match_tol) {
  check_embedding_shape(g, emb);
  const std::vector<Isometry> elements = group_elements(group);
  std::vector<Point2> sum(emb.size());
  for (const Isometry& iso : elements) {
    const auto perm = induced_permutation(g, emb, iso, match_tol);
    if (!perm) throw Error(ErrorKind::Geometry, "group element does not induce an automorphism");
    const Isometry back = iso.inverse();
    for (std::size_t v = 0; v < emb.size(); ++v) sum[v] = sum[v] + back.apply(emb[static_cast<std::size_t>((*perm)[v])]);
  }
  for (Point2& p : sum) p = p / static_cast<double>(elements.size());
  return Embedding(std::move(sum));
}

}  // namespace matchstick
