#include "matchstick/angles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace matchstick {

AngleFan angle_fan(const Graph& g, const Embedding& emb, VertexId v) {
  check_embedding_shape(g, emb);
  if (v < 0 || static_cast<std::size_t>(v) >= g.vertex_count()) {
    throw Error(ErrorKind::IndexOutOfRange, "vertex " + std::to_string(v) + " out of range");
  }
  const auto nbrs = g.neighbors(v);
  if (nbrs.size() < 2) throw Error(ErrorKind::InvalidArgument, "angle fan needs a vertex of degree at least 2");

  const Point2 c = emb[static_cast<std::size_t>(v)];
  std::vector<std::pair<double, VertexId>> polar;
  for (VertexId w : nbrs) {
    const Point2 d = emb[static_cast<std::size_t>(w)] - c;
    double phi = std::atan2(d.y, d.x);
    if (phi < 0.0) phi += 2.0 * kPi;
    polar.emplace_back(phi, w);
  }
  std::sort(polar.begin(), polar.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });

  AngleFan fan;
  fan.center = v;
  for (std::size_t i = 0; i < polar.size(); ++i) {
    fan.neighbor_order.push_back(polar[i].second);
    const double next = i + 1 < polar.size() ? polar[i + 1].first : polar.front().first - 2.0 * kPi;
    fan.angles_deg.push_back(radians_to_degrees(polar[i].first - next));
  }
  return fan;
}

bool equal_up_to_rotation(const AngleFan& a, const AngleFan& b, double tol) {
  const std::size_t n = a.neighbor_order.size();
  if (a.center != b.center || n != b.neighbor_order.size()) return false;
  for (std::size_t shift = 0; shift < n; ++shift) {
    bool same = true;
    for (std::size_t i = 0; i < n && same; ++i) {
      const std::size_t j = (i + shift) % n;
      same = a.neighbor_order[i] == b.neighbor_order[j] && std::abs(a.angles_deg[i] - b.angles_deg[j]) <= tol;
    }
    if (same) return true;
  }
  return false;
}

AngleListReport published_angle_list_check() {
  AngleListReport report;
  report.count = kDegree11Angles.size();
  report.sum = std::accumulate(kDegree11Angles.begin(), kDegree11Angles.end(), 0.0);
  report.min = *std::min_element(kDegree11Angles.begin(), kDegree11Angles.end());
  report.max = *std::max_element(kDegree11Angles.begin(), kDegree11Angles.end());
  report.sum_ok = std::abs(report.sum - 360.0) <= 1e-10;
  report.range_ok = report.min > 25.0 && report.max < 41.0;
  return report;
}

}  // namespace matchstick
