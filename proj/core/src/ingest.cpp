#include "matchstick/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <limits>
#include <set>

#include "spatial_grid.hpp"

namespace matchstick {
namespace {

// ------------------------------------------------------------ TikZ lexing

enum class TokenType { Command, Options, Brace, Tuple, Dash, End, Word };

struct Token {
  TokenType type;
  std::string text;
  std::size_t line;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      if (pos_ >= text_.size()) break;
      const char c = text_[pos_];
      const std::size_t line = line_;
      if (c == '\\') {
        ++pos_;
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == start && pos_ < text_.size()) ++pos_;  // control symbol such as "\\"
        out.push_back({TokenType::Command, std::string(text_.substr(start, pos_ - start)), line});
      } else if (c == '[') {
        out.push_back({TokenType::Options, delimited('[', ']'), line});
      } else if (c == '{') {
        out.push_back({TokenType::Brace, delimited('{', '}'), line});
      } else if (c == '(') {
        out.push_back({TokenType::Tuple, delimited('(', ')'), line});
      } else if (c == ';') {
        ++pos_;
        out.push_back({TokenType::End, ";", line});
      } else if (c == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') {
        pos_ += 2;
        out.push_back({TokenType::Dash, "--", line});
      } else {
        std::size_t start = pos_;
        while (pos_ < text_.size() && !is_special(text_[pos_]) &&
               !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
          if (text_[pos_] == '-' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '-') break;
          ++pos_;
        }
        if (pos_ == start) ++pos_;  // stray closing delimiter
        out.push_back({TokenType::Word, std::string(text_.substr(start, pos_ - start)), line});
      }
    }
    return out;
  }

 private:
  static bool is_special(char c) {
    return c == '\\' || c == '[' || c == '{' || c == '(' || c == ';' || c == ']' || c == '}' ||
           c == ')';
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::string delimited(char open, char close) {
    const std::size_t start_line = line_;
    int depth = 0;
    std::size_t start = pos_ + 1;
    for (; pos_ < text_.size(); ++pos_) {
      const char c = text_[pos_];
      if (c == '\n') ++line_;
      if (c == open) ++depth;
      if (c == close && --depth == 0) {
        std::string inner(text_.substr(start, pos_ - start));
        ++pos_;
        return inner;
      }
    }
    throw ParseError(start_line, std::string("unterminated '") + open + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool parse_number(std::string_view s, double& out) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

/// A tuple containing a comma must be a numeric coordinate pair.
std::optional<Point2> coordinate(const Token& tok) {
  const auto comma = tok.text.find(',');
  if (comma == std::string::npos) return std::nullopt;
  const std::string_view body(tok.text);
  Point2 p;
  if (body.find(',', comma + 1) != std::string_view::npos ||
      !parse_number(body.substr(0, comma), p.x) || !parse_number(body.substr(comma + 1), p.y)) {
    throw ParseError(tok.line, "malformed coordinate tuple '(" + tok.text + ")'");
  }
  return p;
}

std::string label_text(std::string_view options) {
  const auto at = options.find("label=");
  if (at == std::string_view::npos) return {};
  std::string_view value = options.substr(at + 6);
  value = value.substr(0, value.find(','));
  if (const auto colon = value.rfind(':'); colon != std::string_view::npos) value = value.substr(colon + 1);
  std::string out;
  for (char c : value)
    if (c != '$' && c != '{' && c != '}' && !std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

enum class Mode { None, Path, Marker, Label, Skip };

}  // namespace

SegmentList parse_tikz(std::string_view text) {
  const std::vector<Token> tokens = Lexer(text).run();
  SegmentList out;

  Mode mode = Mode::None;
  std::optional<Point2> prev;
  bool pending_dash = false;
  bool saw_circle = false;
  std::optional<Point2> stmt_point;
  std::string stmt_label;
  std::string stmt_node;

  auto finish = [&] {
    if (mode == Mode::Marker && saw_circle && stmt_point) out.markers.push_back(*stmt_point);
    if (mode == Mode::Label && stmt_point) {
      const std::string name = !stmt_label.empty() ? stmt_label : stmt_node;
      if (!name.empty()) out.labels[name] = *stmt_point;
    }
    mode = Mode::None;
    prev.reset();
    pending_dash = false;
    saw_circle = false;
    stmt_point.reset();
    stmt_label.clear();
    stmt_node.clear();
  };

  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& tok = tokens[i];
    switch (tok.type) {
      case TokenType::End:
        finish();
        break;
      case TokenType::Command:
        if (tok.text == "begin" || tok.text == "end") {
          if (i + 1 < tokens.size() && tokens[i + 1].type == TokenType::Brace) ++i;
        } else if (mode == Mode::None || mode == Mode::Path) {
          if (tok.text == "draw" || tok.text == "path") {
            mode = Mode::Path;
          } else if (tok.text == "fill") {
            mode = Mode::Marker;
          } else if (tok.text == "coordinate") {
            mode = Mode::Label;
          } else if (mode == Mode::None) {
            mode = Mode::Skip;
          }
        }
        break;
      case TokenType::Options:
        if (mode == Mode::Label) stmt_label = label_text(tok.text);
        break;
      case TokenType::Brace:
        break;
      case TokenType::Dash:
        if (mode == Mode::None) mode = Mode::Path;
        pending_dash = true;
        break;
      case TokenType::Word:
        if (mode == Mode::Marker && tok.text == "circle") saw_circle = true;
        pending_dash = false;
        break;
      case TokenType::Tuple: {
        if (mode == Mode::Skip) break;
        if (mode == Mode::None) mode = Mode::Path;
        const std::optional<Point2> p = coordinate(tok);
        if (mode == Mode::Path) {
          if (!p) {
            prev.reset();
            pending_dash = false;
            break;
          }
          if (pending_dash && prev) out.segments.push_back({*prev, *p});
          prev = p;
          pending_dash = false;
        } else if (mode == Mode::Marker) {
          if (p && !stmt_point) stmt_point = p;
        } else if (mode == Mode::Label) {
          if (p) stmt_point = p;
          else if (stmt_node.empty()) stmt_node = std::string(trim(tok.text));
        }
        break;
      }
    }
  }
  finish();
  return out;
}

RawGraph build_graph(const SegmentList& segs, const ToleranceProfile& tol) {
  tol.validate();
  const double snap = tol.snap_tol;
  const std::size_t n_points = 2 * segs.segments.size();

  std::vector<Point2> points;
  points.reserve(n_points);
  for (std::size_t k = 0; k < segs.segments.size(); ++k) {
    const Segment& s = segs.segments[k];
    if (distance(s.a, s.b) <= snap) {
      throw Error(ErrorKind::InvalidArgument,
                  "segment " + std::to_string(k) + " is shorter than the snap tolerance");
    }
    points.push_back(s.a);
    points.push_back(s.b);
  }

  // Cluster endpoints: transitive closure of "within snap_tol".
  detail::UnionFind uf(n_points);
  {
    detail::SpatialGrid grid(snap);
    for (std::size_t i = 0; i < n_points; ++i) grid.insert_point(static_cast<int>(i), points[i]);
    const Point2 pad{snap, snap};
    for (std::size_t i = 0; i < n_points; ++i) {
      grid.visit_box(points[i] - pad, points[i] + pad, [&](int j) {
        if (distance(points[i], points[j]) < snap) uf.unite(static_cast<int>(i), j);
      });
    }
  }

  // Vertex ids follow first appearance of each cluster in the segment list.
  std::vector<int> cluster_of(n_points, -1);
  std::vector<int> id_of_root(n_points, -1);
  std::vector<std::vector<Point2>> members;
  for (std::size_t i = 0; i < n_points; ++i) {
    const int root = uf.find(static_cast<int>(i));
    if (id_of_root[root] < 0) {
      id_of_root[root] = static_cast<int>(members.size());
      members.emplace_back();
    }
    cluster_of[i] = id_of_root[root];
    members[cluster_of[i]].push_back(points[i]);
  }

  RawGraph out;
  std::vector<Point2> positions;
  positions.reserve(members.size());
  for (auto& m : members) {
    // Sorted summation makes the centroid independent of input order.
    std::sort(m.begin(), m.end(), [](Point2 a, Point2 b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
    Point2 c;
    for (const Point2& p : m) c = c + p;
    positions.push_back(c / static_cast<double>(m.size()));
  }
  for (std::size_t i = 0; i < n_points; ++i) {
    out.report.max_snap_displacement =
        std::max(out.report.max_snap_displacement, distance(points[i], positions[cluster_of[i]]));
  }

  // Split drawn runs at vertices lying on their interior.
  double cell = 1.0;
  {
    std::vector<double> lengths;
    for (const Segment& s : segs.segments) lengths.push_back(distance(s.a, s.b));
    if (!lengths.empty()) {
      std::nth_element(lengths.begin(), lengths.begin() + (lengths.size() - 1) / 2, lengths.end());
      cell = std::max(lengths[(lengths.size() - 1) / 2], snap);
    }
  }
  detail::SpatialGrid vgrid(cell);
  for (std::size_t v = 0; v < positions.size(); ++v) vgrid.insert_point(static_cast<int>(v), positions[v]);

  std::set<std::pair<int, int>> edge_set;
  std::size_t chain_edges = 0;
  for (std::size_t k = 0; k < segs.segments.size(); ++k) {
    const int a = cluster_of[2 * k];
    const int c = cluster_of[2 * k + 1];
    if (a == c) {
      throw Error(ErrorKind::InvalidArgument,
                  "segment " + std::to_string(k) + " collapses to a single vertex");
    }
    const Point2 pa = positions[a], pc = positions[c];
    const Point2 dir = pc - pa;
    const double len = norm(dir);
    const Point2 lo{std::min(pa.x, pc.x) - snap, std::min(pa.y, pc.y) - snap};
    const Point2 hi{std::max(pa.x, pc.x) + snap, std::max(pa.y, pc.y) + snap};
    std::vector<std::pair<double, int>> interior;
    std::set<int> seen;
    vgrid.visit_box(lo, hi, [&](int v) {
      if (v == a || v == c || !seen.insert(v).second) return;
      const double along = dot(positions[v] - pa, dir) / len;
      if (along <= snap || along >= len - snap) return;
      if (std::abs(cross(dir, positions[v] - pa)) / len < snap) interior.emplace_back(along, v);
    });
    std::sort(interior.begin(), interior.end());
    if (!interior.empty()) ++out.report.segments_split;
    int from = a;
    auto add = [&](int u, int w) {
      ++chain_edges;
      edge_set.insert({std::min(u, w), std::max(u, w)});
    };
    for (const auto& [along, v] : interior) {
      add(from, v);
      from = v;
    }
    add(from, c);
  }

  std::vector<Edge> edges;
  edges.reserve(edge_set.size());
  for (const auto& [u, w] : edge_set) edges.push_back({u, w});

  out.report.n_segments = segs.segments.size();
  out.report.n_vertices = positions.size();
  out.report.n_edges = edges.size();
  out.report.duplicate_segments_dropped = chain_edges - edges.size();

  // Distinct clusters must stay apart by vertex_sep in unit-edge terms.
  if (!edges.empty()) {
    std::vector<double> lengths;
    for (const Edge& e : edges) lengths.push_back(distance(positions[e.u], positions[e.v]));
    std::nth_element(lengths.begin(), lengths.begin() + (lengths.size() - 1) / 2, lengths.end());
    const double scale = lengths[(lengths.size() - 1) / 2];
    const auto close = close_vertex_pairs(Embedding(positions), tol.vertex_sep * scale);
    if (!close.empty()) {
      throw Error(ErrorKind::AmbiguousVertices,
                  "vertices " + std::to_string(close.front().first) + " and " +
                      std::to_string(close.front().second) + " are closer than vertex_sep");
    }
  }

  auto nearest_vertex = [&](Point2 p) {
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t v = 0; v < positions.size(); ++v) {
      const double d = distance(p, positions[v]);
      if (d < best_d) {
        best_d = d;
        best = static_cast<int>(v);
      }
    }
    return std::pair{best, best_d};
  };

  for (std::size_t k = 0; k < segs.markers.size(); ++k) {
    const auto [v, d] = nearest_vertex(segs.markers[k]);
    if (v < 0 || d > snap) {
      throw Error(ErrorKind::MarkerUnresolved,
                  "marker " + std::to_string(k) + " is not within snap_tol of any vertex");
    }
    out.marker_vertices.push_back(v);
  }

  // Labels are placed beside their point; they name the nearest marker, or a
  // vertex directly under them when the picture has no markers.
  std::map<VertexId, std::string> label_names;
  for (const auto& [name, at] : segs.labels) {
    VertexId target = -1;
    if (!out.marker_vertices.empty()) {
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < segs.markers.size(); ++k) {
        const double d = distance(at, segs.markers[k]);
        if (d < best_d) {
          best_d = d;
          target = out.marker_vertices[k];
        }
      }
    } else {
      const auto [v, d] = nearest_vertex(at);
      if (v < 0 || d > snap) {
        throw Error(ErrorKind::MarkerUnresolved, "label '" + name + "' does not resolve to a vertex");
      }
      target = v;
    }
    if (!label_names.emplace(target, name).second) {
      throw Error(ErrorKind::AmbiguousVertices,
                  "labels '" + label_names[target] + "' and '" + name + "' resolve to the same vertex");
    }
  }
  out.names = label_names;
  for (std::size_t k = 0; k < out.marker_vertices.size(); ++k) {
    out.names.emplace(out.marker_vertices[k], "marker" + std::to_string(k));
  }

  out.graph = Graph(positions.size(), std::move(edges));
  out.embedding = Embedding(std::move(positions));
  return out;
}

Normalized normalize_scale(const Graph& g, const Embedding& raw) {
  check_embedding_shape(g, raw);
  if (g.edge_count() == 0) throw Error(ErrorKind::DegenerateInput, "cannot normalize a graph without edges");
  std::vector<double> lengths;
  lengths.reserve(g.edge_count());
  for (const Edge& e : g.edges()) lengths.push_back(distance(raw[e.u], raw[e.v]));
  const auto mid = lengths.begin() + static_cast<std::ptrdiff_t>((lengths.size() - 1) / 2);
  std::nth_element(lengths.begin(), mid, lengths.end());
  const double scale = *mid;
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw Error(ErrorKind::DegenerateInput, "median edge length is zero or not finite");
  }
  std::vector<Point2> pts;
  pts.reserve(raw.size());
  for (const Point2& p : raw.positions()) pts.push_back(p / scale);
  return {Embedding(std::move(pts)), scale};
}

IngestResult ingest_tikz(std::string_view text, const ToleranceProfile& tol) {
  RawGraph raw = build_graph(parse_tikz(text), tol);
  Normalized norm = normalize_scale(raw.graph, raw.embedding);
  raw.report.scale = norm.scale;
  return {std::move(raw.graph), std::move(norm.embedding), std::move(raw.marker_vertices),
          std::move(raw.names), raw.report};
}

std::optional<VertexId> find_named_vertex(const NameMap& names, std::string_view name) {
  for (const auto& [id, n] : names)
    if (n == name) return id;
  return std::nullopt;
}

}  // namespace matchstick
