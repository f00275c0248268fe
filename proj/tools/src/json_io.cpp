#include "matchstick/cli/json_io.hpp"

#include <cmath>
#include <limits>

namespace matchstick {
namespace {

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

double read_number(const json& j) {
  return j.is_null() ? std::numeric_limits<double>::infinity() : j.get<double>();
}

std::string_view kind_name(Isometry::Kind k) {
  switch (k) {
    case Isometry::Kind::Rotation:
      return "rotation";
    case Isometry::Kind::Reflection:
      return "reflection";
    case Isometry::Kind::Identity:
      break;
  }
  return "identity";
}

Isometry::Kind kind_from_name(const std::string& s) {
  if (s == "rotation") return Isometry::Kind::Rotation;
  if (s == "reflection") return Isometry::Kind::Reflection;
  if (s == "identity") return Isometry::Kind::Identity;
  throw Error(ErrorKind::Parse, "unknown isometry kind '" + s + "'");
}

json pairs_to_json(const std::vector<std::pair<VertexId, VertexId>>& pairs) {
  json out = json::array();
  for (const auto& [a, b] : pairs) out.push_back({a, b});
  return out;
}

std::vector<std::pair<VertexId, VertexId>> pairs_from_json(const json& j) {
  std::vector<std::pair<VertexId, VertexId>> out;
  for (const json& p : j) out.emplace_back(p.at(0).get<VertexId>(), p.at(1).get<VertexId>());
  return out;
}

json degree_map_to_json(const std::map<int, std::size_t>& m) {
  json out = json::object();
  for (const auto& [deg, count] : m) out[std::to_string(deg)] = count;
  return out;
}

std::map<int, std::size_t> degree_map_from_json(const json& j) {
  std::map<int, std::size_t> out;
  for (const auto& [key, value] : j.items()) out[std::stoi(key)] = value.get<std::size_t>();
  return out;
}

}  // namespace

void to_json(json& j, const Point2& p) { j = json::array({p.x, p.y}); }
void from_json(const json& j, Point2& p) { p = {j.at(0).get<double>(), j.at(1).get<double>()}; }

void to_json(json& j, const Isometry& iso) {
  j = {{"kind", kind_name(iso.kind)}, {"center", iso.center}, {"angle", iso.angle}, {"translation", iso.translation}};
}
void from_json(const json& j, Isometry& iso) {
  iso.kind = kind_from_name(j.at("kind").get<std::string>());
  iso.center = j.value("center", Point2{});
  iso.angle = j.value("angle", 0.0);
  iso.translation = j.value("translation", Point2{});
}

void to_json(json& j, const DegreeProfile& d) { j = {{"m", d.m}, {"n", d.n}, {"counts", degree_map_to_json(d.counts)}}; }
void from_json(const json& j, DegreeProfile& d) {
  d.m = j.at("m").get<int>();
  d.n = j.at("n").get<int>();
  d.counts = degree_map_from_json(j.at("counts"));
}

void to_json(json& j, const EdgePairViolation& v) {
  j = {{"edge_a", v.edge_a}, {"edge_b", v.edge_b}, {"clearance", v.clearance}};
}
void from_json(const json& j, EdgePairViolation& v) {
  v.edge_a = j.at("edge_a").get<std::size_t>();
  v.edge_b = j.at("edge_b").get<std::size_t>();
  v.clearance = j.at("clearance").get<double>();
}

void to_json(json& j, const VertexEdgeViolation& v) {
  j = {{"vertex", v.vertex}, {"edge", v.edge}, {"clearance", v.clearance}};
}
void from_json(const json& j, VertexEdgeViolation& v) {
  v.vertex = j.at("vertex").get<VertexId>();
  v.edge = j.at("edge").get<std::size_t>();
  v.clearance = j.at("clearance").get<double>();
}

void to_json(json& j, const VerificationCertificate& c) {
  j = {{"unit_ok", c.unit_ok},
       {"max_abs_length_deviation", c.max_abs_length_deviation},
       {"crossing_ok", c.crossing_ok},
       {"violating_edge_pairs", c.violating_edge_pairs},
       {"vertex_edge_violations", c.vertex_edge_violations},
       {"degrees_ok", c.degrees_ok},
       {"degree_profile", c.degree_profile},
       {"connected", c.connected},
       {"separation_ok", c.separation_ok},
       {"close_pairs", pairs_to_json(c.close_pairs)},
       {"overall", c.overall}};
}
void from_json(const json& j, VerificationCertificate& c) {
  c.unit_ok = j.at("unit_ok").get<bool>();
  c.max_abs_length_deviation = j.at("max_abs_length_deviation").get<double>();
  c.crossing_ok = j.at("crossing_ok").get<bool>();
  c.violating_edge_pairs = j.at("violating_edge_pairs").get<std::vector<EdgePairViolation>>();
  c.vertex_edge_violations = j.at("vertex_edge_violations").get<std::vector<VertexEdgeViolation>>();
  c.degrees_ok = j.at("degrees_ok").get<bool>();
  c.degree_profile = j.at("degree_profile").get<DegreeProfile>();
  c.connected = j.at("connected").get<bool>();
  c.separation_ok = j.at("separation_ok").get<bool>();
  c.close_pairs = pairs_from_json(j.at("close_pairs"));
  c.overall = j.at("overall").get<bool>();
}

void to_json(json& j, const PatchReport& r) {
  j = {{"unit_ok", r.unit_ok},
       {"max_abs_length_deviation", r.max_abs_length_deviation},
       {"crossing_ok", r.crossing_ok},
       {"violating_edge_pairs", r.violating_edge_pairs},
       {"vertex_edge_violations", r.vertex_edge_violations},
       {"separation_ok", r.separation_ok},
       {"boundary_count", r.boundary_count},
       {"boundary_vertices", r.boundary_vertices},
       {"interior_degrees", degree_map_to_json(r.interior_degrees)},
       {"interior_degrees_ok", r.interior_degrees_ok},
       {"overall", r.overall}};
}
void from_json(const json& j, PatchReport& r) {
  r.unit_ok = j.at("unit_ok").get<bool>();
  r.max_abs_length_deviation = j.at("max_abs_length_deviation").get<double>();
  r.crossing_ok = j.at("crossing_ok").get<bool>();
  r.violating_edge_pairs = j.at("violating_edge_pairs").get<std::vector<EdgePairViolation>>();
  r.vertex_edge_violations = j.at("vertex_edge_violations").get<std::vector<VertexEdgeViolation>>();
  r.separation_ok = j.at("separation_ok").get<bool>();
  r.boundary_count = j.at("boundary_count").get<std::size_t>();
  r.boundary_vertices = j.at("boundary_vertices").get<std::vector<VertexId>>();
  r.interior_degrees = degree_map_from_json(j.at("interior_degrees"));
  r.interior_degrees_ok = j.at("interior_degrees_ok").get<bool>();
  r.overall = j.at("overall").get<bool>();
}

void to_json(json& j, const IngestReport& r) {
  j = {{"n_segments", r.n_segments},
       {"n_vertices", r.n_vertices},
       {"n_edges", r.n_edges},
       {"scale", r.scale},
       {"max_snap_displacement", r.max_snap_displacement},
       {"duplicate_segments_dropped", r.duplicate_segments_dropped},
       {"segments_split", r.segments_split}};
}
void from_json(const json& j, IngestReport& r) {
  r.n_segments = j.at("n_segments").get<std::size_t>();
  r.n_vertices = j.at("n_vertices").get<std::size_t>();
  r.n_edges = j.at("n_edges").get<std::size_t>();
  r.scale = j.at("scale").get<double>();
  r.max_snap_displacement = j.at("max_snap_displacement").get<double>();
  r.duplicate_segments_dropped = j.at("duplicate_segments_dropped").get<std::size_t>();
  r.segments_split = j.at("segments_split").get<std::size_t>();
}

void to_json(json& j, const RefineReport& r) {
  j = {{"converged", r.converged},
       {"iterations", r.iterations},
       {"final_max_abs_residual", r.final_max_abs_residual},
       {"displacement_max", r.displacement_max}};
}
void from_json(const json& j, RefineReport& r) {
  r.converged = j.at("converged").get<bool>();
  r.iterations = j.at("iterations").get<int>();
  r.final_max_abs_residual = j.at("final_max_abs_residual").get<double>();
  r.displacement_max = j.at("displacement_max").get<double>();
}

void to_json(json& j, const RigidityReport& r) {
  json basis = json::array();
  for (const Eigen::VectorXd& f : r.flex_basis) basis.push_back(std::vector<double>(f.data(), f.data() + f.size()));
  j = {{"rank", r.rank},
       {"internal_dof", r.internal_dof},
       {"classification", to_string(r.classification)},
       {"singular_values", r.singular_values},
       {"gap_ratio", number(r.gap_ratio)},
       {"flex_basis", basis},
       {"unrefined", r.unrefined},
       {"ill_conditioned", r.ill_conditioned}};
}
void from_json(const json& j, RigidityReport& r) {
  r.rank = j.at("rank").get<int>();
  r.internal_dof = j.at("internal_dof").get<int>();
  const std::string cls = j.at("classification").get<std::string>();
  if (cls != "rigid" && cls != "flexible") throw Error(ErrorKind::Parse, "unknown classification '" + cls + "'");
  r.classification = cls == "rigid" ? Classification::Rigid : Classification::Flexible;
  r.singular_values = j.at("singular_values").get<std::vector<double>>();
  r.gap_ratio = read_number(j.at("gap_ratio"));
  r.flex_basis.clear();
  for (const json& f : j.at("flex_basis")) {
    const auto v = f.get<std::vector<double>>();
    r.flex_basis.emplace_back(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
  }
  r.unrefined = j.at("unrefined").get<bool>();
  r.ill_conditioned = j.at("ill_conditioned").get<bool>();
}

void to_json(json& j, const CriticalityScan& s) {
  json edges = json::array();
  for (const EdgeCriticality& e : s.edges) edges.push_back({{"edge", e.edge}, {"dof_after_removal", e.dof_after_removal}});
  j = {{"rank", s.rank}, {"internal_dof", s.internal_dof}, {"redundancy", s.redundancy}, {"edges", edges}};
}
void from_json(const json& j, CriticalityScan& s) {
  s.rank = j.at("rank").get<int>();
  s.internal_dof = j.at("internal_dof").get<int>();
  s.redundancy = j.at("redundancy").get<int>();
  s.edges.clear();
  for (const json& e : j.at("edges")) {
    s.edges.push_back({e.at("edge").get<std::size_t>(), e.at("dof_after_removal").get<int>()});
  }
}

void to_json(json& j, const PebbleGameResult& r) {
  j = {{"generic_dof", r.generic_dof}, {"independent_edges", r.independent_edges}};
}
void from_json(const json& j, PebbleGameResult& r) {
  r.generic_dof = j.at("generic_dof").get<int>();
  r.independent_edges = j.at("independent_edges").get<std::vector<std::size_t>>();
}

void to_json(json& j, const SymmetryGroup& g) {
  j = {{"rotation_order", g.rotation_order},
       {"mirror_count", g.mirror_count},
       {"classification", g.classification},
       {"generators", g.generators},
       {"center", g.center},
       {"mirror_angles", g.mirror_angles}};
}
void from_json(const json& j, SymmetryGroup& g) {
  g.rotation_order = j.at("rotation_order").get<int>();
  g.mirror_count = j.at("mirror_count").get<int>();
  g.classification = j.at("classification").get<std::string>();
  g.generators = j.at("generators").get<std::vector<Isometry>>();
  g.center = j.at("center").get<Point2>();
  g.mirror_angles = j.at("mirror_angles").get<std::vector<double>>();
}

void to_json(json& j, const AngleFan& f) {
  j = {{"center", f.center}, {"neighbor_order", f.neighbor_order}, {"angles_deg", f.angles_deg}};
}
void from_json(const json& j, AngleFan& f) {
  f.center = j.at("center").get<VertexId>();
  f.neighbor_order = j.at("neighbor_order").get<std::vector<VertexId>>();
  f.angles_deg = j.at("angles_deg").get<std::vector<double>>();
}

void to_json(json& j, const AngleListReport& r) {
  j = {{"count", r.count}, {"sum", r.sum},         {"min", r.min},
       {"max", r.max},     {"sum_ok", r.sum_ok},   {"range_ok", r.range_ok}};
}
void from_json(const json& j, AngleListReport& r) {
  r.count = j.at("count").get<std::size_t>();
  r.sum = j.at("sum").get<double>();
  r.min = j.at("min").get<double>();
  r.max = j.at("max").get<double>();
  r.sum_ok = j.at("sum_ok").get<bool>();
  r.range_ok = j.at("range_ok").get<bool>();
}

void to_json(json& j, const TraceRow& r) {
  j = {{"step", r.step}, {"arclength", r.arclength}, {"monitor", r.monitor}, {"max_residual", r.max_residual}};
  if (r.crossing_free) j["crossing_free"] = *r.crossing_free;
}
void from_json(const json& j, TraceRow& r) {
  r.step = j.at("step").get<long>();
  r.arclength = j.at("arclength").get<double>();
  r.monitor = j.at("monitor").get<double>();
  r.max_residual = j.at("max_residual").get<double>();
  r.crossing_free = j.contains("crossing_free") ? std::optional<bool>(j.at("crossing_free").get<bool>()) : std::nullopt;
}

json embedding_to_json(const Embedding& emb) {
  json out = json::array();
  for (const Point2& p : emb.positions()) out.push_back(p);
  return out;
}

Embedding embedding_from_json(const json& j) { return Embedding(j.get<std::vector<Point2>>()); }

}  // namespace matchstick
