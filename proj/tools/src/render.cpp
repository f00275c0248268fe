#include "matchstick/cli/render.hpp"

#include <algorithm>
#include <cstdio>
#include <string>

namespace matchstick {
namespace {

std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x == 0.0 ? 0.0 : x);  // no "-0.000000"
  return buf;
}

}  // namespace

std::string render_svg(const Graph& g, const Embedding& emb, const SvgStyle& style) {
  check_embedding_shape(g, emb);
  if (g.vertex_count() == 0) throw Error(ErrorKind::InvalidArgument, "cannot render an empty graph");

  double min_x = emb[0].x, max_x = emb[0].x, min_y = -emb[0].y, max_y = -emb[0].y;
  for (const Point2& p : emb.positions()) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, -p.y);
    max_y = std::max(max_y, -p.y);
  }
  const double span = std::max({max_x - min_x, max_y - min_y, 1.0});
  const double margin = 0.05 * span;
  const double width = max_x - min_x + 2.0 * margin;
  const double height = max_y - min_y + 2.0 * margin;

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fixed(min_x - margin) + " " +
         fixed(min_y - margin) + " " + fixed(width) + " " + fixed(height) + "\">\n";
  out += "<g stroke=\"#222\" stroke-width=\"" + fixed(style.stroke_width) + "\" stroke-linecap=\"round\">\n";
  for (const Edge& e : g.edges()) {
    const Point2 a = emb[static_cast<std::size_t>(e.u)];
    const Point2 b = emb[static_cast<std::size_t>(e.v)];
    out += "<line x1=\"" + fixed(a.x) + "\" y1=\"" + fixed(-a.y) + "\" x2=\"" + fixed(b.x) + "\" y2=\"" +
           fixed(-b.y) + "\"/>\n";
  }
  out += "</g>\n";
  if (style.vertex_dots) {
    out += "<g fill=\"#222\">\n";
    for (const Point2& p : emb.positions()) {
      out += "<circle cx=\"" + fixed(p.x) + "\" cy=\"" + fixed(-p.y) + "\" r=\"" + fixed(style.dot_radius) + "\"/>\n";
    }
    out += "</g>\n";
  }
  if (!style.highlight.empty()) {
    out += "<g fill=\"#d62728\">\n";
    for (VertexId v : style.highlight) {
      if (v < 0 || static_cast<std::size_t>(v) >= emb.size()) {
        throw Error(ErrorKind::IndexOutOfRange, "highlighted vertex " + std::to_string(v) + " out of range");
      }
      const Point2 p = emb[static_cast<std::size_t>(v)];
      out += "<circle cx=\"" + fixed(p.x) + "\" cy=\"" + fixed(-p.y) + "\" r=\"" + fixed(2.0 * style.dot_radius) +
             "\"/>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace matchstick
