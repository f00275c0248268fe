#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Core>

#include "matchstick/error.hpp"

namespace matchstick {

using VertexId = int;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Point2 a, Point2 b) = default;

  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
constexpr double squared_norm(Point2 a) { return a.x * a.x + a.y * a.y; }

double distance(Point2 p, Point2 q);

/// Unordered vertex pair. Stored as given; Graph rejects self-loops and
/// duplicates in either orientation.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  friend constexpr bool operator==(Edge, Edge) = default;
  bool touches(VertexId w) const { return u == w || v == w; }
  VertexId other(VertexId w) const { return w == u ? v : u; }
};

/// Immutable simple undirected graph.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t n_vertices, std::vector<Edge> edges);

  std::size_t vertex_count() const { return n_vertices_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Edge> edges() const { return edges_; }
  const Edge& edge(std::size_t index) const { return edges_.at(index); }

  /// Neighbors in ascending id order.
  std::span<const VertexId> neighbors(VertexId v) const { return adjacency_.at(v); }
  int degree(VertexId v) const { return static_cast<int>(adjacency_.at(v).size()); }

  bool has_edge(VertexId a, VertexId b) const;
  std::optional<std::size_t> edge_index(VertexId a, VertexId b) const;

  Graph with_edge(VertexId a, VertexId b) const;
  Graph without_edge(std::size_t index) const;

  bool connected() const;
  std::vector<int> degrees() const;

 private:
  static std::uint64_t key(VertexId a, VertexId b);

  std::size_t n_vertices_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<VertexId>> adjacency_;
  std::unordered_map<std::uint64_t, std::size_t> lookup_;
};

/// Vertex positions in unit-edge scale, one per graph vertex.
class Embedding {
 public:
  Embedding() = default;
  explicit Embedding(std::vector<Point2> positions);

  std::size_t size() const { return positions_.size(); }
  const Point2& operator[](std::size_t i) const { return positions_[i]; }
  std::span<const Point2> positions() const { return positions_; }

  /// Coordinates flattened as (x0, y0, x1, y1, ...).
  Eigen::VectorXd flatten() const;
  static Embedding from_flat(const Eigen::Ref<const Eigen::VectorXd>& coords);

  Embedding with_position(std::size_t i, Point2 p) const;
  Point2 centroid() const;

  friend bool operator==(const Embedding&, const Embedding&) = default;

 private:
  std::vector<Point2> positions_;
};

/// Numerical tolerances shared by every stage. The defaults are tuned for the
/// four-decimal figure data the ingest module reads.
struct ToleranceProfile {
  double eps_raw = 1e-3;
  double eps_refined = 1e-9;
  double delta_cross = 1e-7;
  double vertex_sep = 1e-4;
  double snap_tol = 0.05;  // figure units
  double rank_tau = 1e-7;
  double sym_tol = 1e-6;

  /// Throws InvalidArgument unless every field is positive and
  /// eps_refined < eps_raw.
  void validate() const;
};

struct DegreeProfile {
  int m = 0;
  int n = 0;
  std::map<int, std::size_t> counts;
};

/// Planar isometry: a rotation about `center`, a reflection in the line
/// through `center` with direction `angle`, or the identity, followed by a
/// translation.
struct Isometry {
  enum class Kind { Identity, Rotation, Reflection };

  Kind kind = Kind::Identity;
  Point2 center;
  double angle = 0.0;  // radians
  Point2 translation;

  static Isometry identity() { return {}; }
  static Isometry rotation(double angle, Point2 center = {});
  static Isometry reflection(double axis_angle, Point2 through = {});
  static Isometry translate(Point2 offset);

  Point2 apply(Point2 p) const;
  Isometry inverse() const;
  /// Linear 2x2 part (rotation or reflection matrix).
  Eigen::Matrix2d linear() const;
};

Embedding apply_isometry(const Isometry& iso, const Embedding& emb);

/// Throws InvalidGraph when the embedding size does not match the graph, or a
/// coordinate is non-finite.
void check_embedding_shape(const Graph& g, const Embedding& emb);

/// Pairs of distinct vertices closer than `min_separation`.
std::vector<std::pair<VertexId, VertexId>> close_vertex_pairs(const Embedding& emb,
                                                              double min_separation);

double max_abs_length_deviation(const Graph& g, const Embedding& emb);

constexpr double kPi = 3.14159265358979323846;
constexpr double degrees_to_radians(double deg) { return deg * kPi / 180.0; }
constexpr double radians_to_degrees(double rad) { return rad * 180.0 / kPi; }

}  // namespace matchstick
