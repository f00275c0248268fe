#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "matchstick/geometry.hpp"

namespace matchstick {

struct Segment {
  Point2 a;
  Point2 b;
};

/// Raw drawing extracted from a TikZ picture, in figure units.
struct SegmentList {
  std::vector<Segment> segments;
  std::vector<Point2> markers;           // \fill ... circle points
  std::map<std::string, Point2> labels;  // \coordinate[label=...] positions
};

struct IngestReport {
  std::size_t n_segments = 0;
  std::size_t n_vertices = 0;
  std::size_t n_edges = 0;
  double scale = 1.0;  // figure units per unit edge
  double max_snap_displacement = 0.0;
  std::size_t duplicate_segments_dropped = 0;
  std::size_t segments_split = 0;  // drawn runs broken at interior vertices
};

/// Vertex names keyed by id. Ingest fills it from figure labels/markers.
using NameMap = std::map<VertexId, std::string>;

struct RawGraph {
  Graph graph;
  Embedding embedding;  // figure units
  std::vector<VertexId> marker_vertices;
  NameMap names;
  IngestReport report;
};

/// Parses the supported TikZ subset: draw-path polylines joined by `--`,
/// `\fill (x,y) circle ...` markers and `\coordinate[label=..] (n) at (x,y)`
/// labels. Other statements are skipped. Throws ParseError on a malformed
/// coordinate tuple.
SegmentList parse_tikz(std::string_view text);

/// Snaps segment endpoints into vertices (clusters within `tol.snap_tol`,
/// position = cluster centroid), splits drawn segments at vertices lying on
/// their interior, collapses duplicate edges and resolves markers/labels to
/// vertex ids.
RawGraph build_graph(const SegmentList& segs, const ToleranceProfile& tol = {});

struct Normalized {
  Embedding embedding;
  double scale = 1.0;
};

/// Divides all coordinates by the median edge length (lower median).
Normalized normalize_scale(const Graph& g, const Embedding& raw);

/// Convenience pipeline: parse, build, normalize. The report's scale is set.
struct IngestResult {
  Graph graph;
  Embedding embedding;  // unit-edge scale
  std::vector<VertexId> marker_vertices;
  NameMap names;
  IngestReport report;
};
IngestResult ingest_tikz(std::string_view text, const ToleranceProfile& tol = {});

struct MsgDocument {
  Graph graph;
  Embedding embedding;
  NameMap names;
};

/// Line-oriented graph format:
///   # comment
///   v <id> <x> <y>
///   e <id> <id>
///   n <id> <name>
MsgDocument read_msg(std::string_view text);
std::string write_msg(const Graph& g, const Embedding& emb, const NameMap& names = {});

/// Reverse lookup of a name in a NameMap.
std::optional<VertexId> find_named_vertex(const NameMap& names, std::string_view name);

}  // namespace matchstick
