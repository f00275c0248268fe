#pragma once

#include <string>
#include <vector>

#include "matchstick/geometry.hpp"

namespace matchstick {

struct SvgStyle {
  bool vertex_dots = true;
  std::vector<VertexId> highlight;  // drawn larger, in a contrasting color
  double stroke_width = 0.03;       // unit-edge scale
  double dot_radius = 0.06;
};

/// One <line> per edge in edge-list order, y pointing up, viewBox fitted to
/// the drawing with a 5% margin. Throws InvalidArgument for an empty graph.
std::string render_svg(const Graph& g, const Embedding& emb, const SvgStyle& style = {});

}  // namespace matchstick
