#pragma once

#include <array>
#include <vector>

#include "matchstick/geometry.hpp"

namespace matchstick {

/// Angles around a vertex, clockwise, starting at the neighbor with the
/// greatest polar angle in [0, 2*pi).
struct AngleFan {
  VertexId center = 0;
  std::vector<VertexId> neighbor_order;
  std::vector<double> angles_deg;  // angles_deg[i] lies between neighbor_order[i] and [i+1]
};

/// Throws InvalidArgument when v has fewer than two neighbors.
AngleFan angle_fan(const Graph& g, const Embedding& emb, VertexId v);

/// True when `b` is `a` rotated cyclically, with angles equal within `tol`.
bool equal_up_to_rotation(const AngleFan& a, const AngleFan& b, double tol);

/// The eleven angles (degrees) around the degree-11 vertex of the (4,11)
/// graph, clockwise.
inline constexpr std::array<double, 11> kDegree11Angles = {
    32.362519660072210, 40.49207000332465,  25.382433534610843, 34.890820876760450,
    32.21894760945070,  34.514335947363630, 29.108515978283318, 36.31491131809427,
    29.550687898877964, 35.065359484316880, 30.09939768884507};

struct AngleListReport {
  std::size_t count = 0;
  double sum = 0.0;
  double min = 0.0;
  double max = 0.0;
  bool sum_ok = false;    // |sum - 360| <= 1e-10
  bool range_ok = false;  // every value in (25, 41)
};

AngleListReport published_angle_list_check();

}  // namespace matchstick
