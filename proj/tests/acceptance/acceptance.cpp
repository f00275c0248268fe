// Acceptance suite: one PASS/FAIL line per primary criterion, exit 1 on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "matchstick/angles.hpp"
#include "matchstick/flexer.hpp"
#include "matchstick/refiner.hpp"
#include "matchstick/rigidity.hpp"
#include "matchstick/symmetry.hpp"
#include "matchstick/verifier.hpp"
#include "properties.hpp"

using namespace matchstick;
using namespace matchstick::testing;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Collects sub-check failures for one criterion.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& text) { notes_.push_back(text); }
  bool ok() const { return failures_.empty(); }
  const std::vector<std::string>& failures() const { return failures_; }
  std::string summary() const {
    std::string s;
    for (const std::string& n : notes_) s += (s.empty() ? "" : "; ") + n;
    return s;
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

// Published counts for the coordinate-bearing drawings.
struct TableRow {
  std::string stem;
  std::size_t vertices;
  std::size_t edges;
  std::set<int> degrees;  // allowed degrees
  std::optional<std::pair<int, std::size_t>> high;  // (degree, exact count)
};

const std::vector<TableRow>& ingestion_table() {
  static const std::vector<TableRow> rows = [] {
    std::vector<TableRow> r{
        {"fig01a_kite", 12, 21, {2, 4}, std::nullopt},
        {"fig01b_double_kite", 22, 42, {2, 4}, std::nullopt},
        {"fig01c_reverse_double_kite", 22, 42, {2, 4}, std::nullopt},
        {"fig01d_triplet_kite", 22, 41, {2, 3, 4}, std::nullopt},
        {"fig02_harborth", 52, 104, {4}, std::nullopt},
        {"fig03", 54, 108, {4}, std::nullopt},
        {"fig04", 57, 114, {4}, std::nullopt},
        {"fig05_v1", 60, 120, {4}, std::nullopt},
        {"fig05_v2", 60, 120, {4}, std::nullopt},
        {"fig07", 57, 115, {4, 5}, std::pair{5, std::size_t{2}}},
        {"fig08", 57, 117, {4, 6}, std::pair{6, std::size_t{3}}},
        {"fig09_v1", 78, 159, {4, 7}, std::pair{7, std::size_t{2}}},
        {"fig09_v2", 78, 159, {4, 7}, std::pair{7, std::size_t{2}}},
        {"fig09_v3", 78, 159, {4, 7}, std::pair{7, std::size_t{2}}},
        {"fig09_v4", 78, 159, {4, 7}, std::pair{7, std::size_t{2}}},
        {"fig10", 62, 126, {4, 8}, std::pair{8, std::size_t{1}}},
        {"fig19", 62, 126, {4, 5}, std::pair{5, std::size_t{4}}},
        {"fig20", 62, 126, {4, 6}, std::pair{6, std::size_t{2}}},
        {"fig21", 62, 126, {4, 6}, std::pair{6, std::size_t{2}}},
    };
    for (const char* v : {"fig16_v1", "fig16_v2", "fig16_v3", "fig16_v4", "fig17_v5", "fig17_v6", "fig17_v7"})
      r.push_back({v, 60, 121, {4, 5}, std::pair{5, std::size_t{2}}});
    for (const char* v : {"fig18_v1", "fig18_v2", "fig18_v3", "fig18_v4"})
      r.push_back({v, 60, 121, {4, 6}, std::pair{6, std::size_t{1}}});
    return r;
  }();
  return rows;
}

// Every graph with a checked caption, including the infinite patch.
std::vector<std::string> table_stems() {
  std::vector<std::string> stems;
  for (const TableRow& row : ingestion_table()) stems.push_back(row.stem);
  stems.push_back("fig22a");
  return stems;
}

Checks ingestion() {
  Checks c;
  const auto t_all = Clock::now();
  double worst_time = 0.0;
  for (const TableRow& row : ingestion_table()) {
    const auto t0 = Clock::now();
    const IngestResult r = ingest_figure(row.stem);
    const int lo = *row.degrees.begin();
    const int hi = *row.degrees.rbegin();
    const VerificationCertificate cert = verify_matchstick(r.graph, r.embedding, lo, hi);
    const double dt = seconds_since(t0);
    worst_time = std::max(worst_time, dt);

    const std::string tag = row.stem + ": ";
    c.expect(r.graph.vertex_count() == row.vertices && r.graph.edge_count() == row.edges,
             tag + std::to_string(r.graph.vertex_count()) + "/" + std::to_string(r.graph.edge_count()));
    c.expect(cert.unit_ok, tag + "max |len-1| " + fmt(cert.max_abs_length_deviation));
    c.expect(cert.crossing_ok, tag + "crossings");
    c.expect(cert.connected && cert.separation_ok, tag + "connectivity or vertex separation");
    std::map<int, std::size_t> counts;
    for (int d : r.graph.degrees()) ++counts[d];
    for (const auto& [d, k] : counts) c.expect(row.degrees.count(d) == 1, tag + "unexpected degree " + std::to_string(d));
    if (row.high) {
      const auto [d, k] = *row.high;
      c.expect(counts[d] == k, tag + std::to_string(counts[d]) + " vertices of degree " + std::to_string(d));
      c.expect(expected_high_degree_count(row.vertices, row.edges, lo, hi) == k, tag + "handshake count");
    }
    if (row.stem.rfind("fig09", 0) == 0) {
      std::vector<VertexId> sevens;
      for (VertexId v = 0; v < static_cast<VertexId>(r.graph.vertex_count()); ++v)
        if (r.graph.degree(v) == 7) sevens.push_back(v);
      c.expect(sevens.size() == 2 && r.graph.has_edge(sevens[0], sevens[1]), tag + "degree-7 vertices not adjacent");
    }
    c.expect(dt < 1.0, tag + "took " + fmt(dt) + " s");
  }

  const auto t0 = Clock::now();
  const IngestResult patch = ingest_figure("fig22a");
  const PatchReport p = verify_patch(patch.graph, patch.embedding, 4, 12);
  worst_time = std::max(worst_time, seconds_since(t0));
  c.expect(p.overall && p.interior_degrees_ok, "fig22a: patch verification");
  for (const auto& [d, k] : p.interior_degrees) c.expect(d == 4 || d == 12, "fig22a: interior degree " + std::to_string(d));
  c.expect(p.interior_degrees.count(12) == 1 && p.interior_degrees.at(12) == 1, "fig22a: degree-12 count");

  const double total = seconds_since(t_all);
  c.expect(total < 30.0, "total " + fmt(total) + " s");
  c.note(std::to_string(ingestion_table().size() + 1) + " figures");
  c.note("slowest " + fmt(worst_time) + " s");
  c.note("total " + fmt(total) + " s");
  return c;
}

Checks refinement() {
  Checks c;
  double worst_res = 0.0, worst_disp = 0.0, worst_idem = 0.0;
  int worst_iter = 0;
  for (const std::string& stem : table_stems()) {
    const IngestResult r = ingest_figure(stem);
    const RefineResult first = refine(r.graph, r.embedding);
    const double res = max_abs_length_deviation(r.graph, first.embedding);
    const RefineResult second = refine(r.graph, first.embedding);
    double idem = 0.0;
    for (std::size_t v = 0; v < first.embedding.size(); ++v)
      idem = std::max(idem, distance(first.embedding[v], second.embedding[v]));
    c.expect(first.report.converged, stem + ": not converged");
    c.expect(res <= 1e-12, stem + ": max |len-1| " + fmt(res));
    c.expect(first.report.iterations <= 100, stem + ": " + std::to_string(first.report.iterations) + " iterations");
    c.expect(first.report.displacement_max < 2e-3, stem + ": displacement " + fmt(first.report.displacement_max));
    c.expect(idem <= 1e-10, stem + ": second refine moved " + fmt(idem));
    worst_res = std::max(worst_res, res);
    worst_disp = std::max(worst_disp, first.report.displacement_max);
    worst_idem = std::max(worst_idem, idem);
    worst_iter = std::max(worst_iter, first.report.iterations);
  }
  c.note("max |len-1| " + fmt(worst_res));
  c.note("max iterations " + std::to_string(worst_iter));
  c.note("max displacement " + fmt(worst_disp));
  c.note("max re-refine drift " + fmt(worst_idem));
  return c;
}

Checks rigidity() {
  Checks c;
  const std::vector<std::string> rigid{"fig02_harborth", "fig03", "fig04", "fig07", "fig08", "fig10", "fig19",
                                       "fig20", "fig21", "fig16_v1", "fig16_v2", "fig16_v3", "fig16_v4",
                                       "fig17_v5", "fig17_v6", "fig17_v7", "fig18_v1", "fig18_v2", "fig18_v3",
                                       "fig18_v4"};
  for (const std::string& stem : rigid) {
    const RefinedFigure& f = refined_figure(stem);
    const RigidityReport r = analyze(f.graph, f.refined);
    c.expect(r.internal_dof == 0 && r.classification == Classification::Rigid,
             stem + ": dof " + std::to_string(r.internal_dof));
    const PebbleGameResult pg = pebble_game_2_3(f.graph);
    c.expect(pg.generic_dof == r.internal_dof, stem + ": pebble dof " + std::to_string(pg.generic_dof));
  }
  for (const std::string& stem : {"fig05_v1", "fig09_v1", "fig09_v2", "fig09_v3", "fig09_v4"}) {
    const RefinedFigure& f = refined_figure(stem);
    const RigidityReport r = analyze(f.graph, f.refined);
    c.expect(r.internal_dof >= 1 && r.classification == Classification::Flexible,
             std::string(stem) + ": dof " + std::to_string(r.internal_dof));
  }

  const RefinedFigure& kite = refined_figure("fig01a_kite");
  const CriticalityScan ks = criticality_scan(kite.graph, kite.refined);
  c.expect(ks.internal_dof == 0, "kite dof " + std::to_string(ks.internal_dof));
  c.expect(kite.graph.edge_count() == 2 * kite.graph.vertex_count() - 3, "kite is not 2|V|-3");
  std::size_t critical = 0;
  for (const EdgeCriticality& e : ks.edges) critical += e.dof_after_removal == 1 ? 1 : 0;
  c.expect(critical == 21, "kite critical edges " + std::to_string(critical));

  const RefinedFigure& triplet = refined_figure("fig01d_triplet_kite");
  const CriticalityScan ts = criticality_scan(triplet.graph, triplet.refined);
  c.expect(ts.internal_dof == 0, "triplet kite dof " + std::to_string(ts.internal_dof));
  c.expect(triplet.graph.edge_count() == 41 && triplet.graph.edge_count() == 2 * triplet.graph.vertex_count() - 3,
           "triplet kite is not 2|V|-3");
  c.expect(ts.redundancy == 0, "triplet kite redundancy " + std::to_string(ts.redundancy));

  c.note(std::to_string(rigid.size()) + " rigid, 5 flexible");
  c.note("kite " + std::to_string(critical) + "/21 edges critical");
  c.note("triplet kite redundancy " + std::to_string(ts.redundancy));
  return c;
}

Checks transformation() {
  Checks c;
  const IngestResult v2 = ingest_figure("fig05_v2");
  const auto a = find_named_vertex(v2.names, "a");
  const auto b = find_named_vertex(v2.names, "b");
  c.expect(a.has_value() && b.has_value(), "markers a and b not found");
  if (a && b) {
    const auto pa = static_cast<std::size_t>(*a), pb = static_cast<std::size_t>(*b);
    const double raw = std::abs(distance(v2.embedding[pa], v2.embedding[pb]) - 2.0);
    RefineOptions opts;
    opts.extra_constraints.push_back({*a, *b, 2.0});
    const RefineResult aug = refine(v2.graph, v2.embedding, opts);
    const double refined = std::abs(distance(aug.embedding[pa], aug.embedding[pb]) - 2.0);
    const double unit = max_abs_length_deviation(v2.graph, aug.embedding);
    c.expect(raw <= 2e-3, "raw |d-2| " + fmt(raw));
    c.expect(refined <= 1e-12, "augmented |d-2| " + fmt(refined));
    c.expect(unit <= 1e-12, "augmented max |len-1| " + fmt(unit));
    c.note("v2 raw |d-2| " + fmt(raw));
    c.note("augmented " + fmt(refined));
  }

  // User-supplied pair on the twelve-fold graph: vertex ids 0 and 19.
  const RefinedFigure& v1 = refined_figure("fig05_v1");
  const auto t0 = Clock::now();
  const SteerResult s = steer_to_event(v1.graph, FlexState{v1.refined, 0.0, {}}, Monitor{0, 19, 2.0});
  const double dt = seconds_since(t0);
  const double gap = std::abs(monitor_value(s.state.embedding, Monitor{0, 19, 2.0}) - 2.0);
  const double residual = max_abs_length_deviation(v1.graph, s.state.embedding);
  c.expect(gap <= 1e-9, "steer |d-2| " + fmt(gap));
  c.expect(residual <= 1e-10, "steer max |len-1| " + fmt(residual));
  c.expect(dt < 60.0, "steer took " + fmt(dt) + " s");
  c.note("v1 steer |d-2| " + fmt(gap));
  c.note("residual " + fmt(residual));
  c.note(fmt(dt) + " s");
  return c;
}

Checks symmetry() {
  Checks c;
  const auto group = [](const std::string& stem) {
    const RefinedFigure& f = refined_figure(stem);
    return detect_symmetries(f.graph, f.refined);
  };
  const SymmetryGroup v1 = group("fig05_v1");
  c.expect(v1.rotation_order == 12, "fig05_v1 order " + std::to_string(v1.rotation_order));
  const SymmetryGroup v2 = group("fig05_v2");
  c.expect(v2.rotation_order == 6, "fig05_v2 order " + std::to_string(v2.rotation_order));
  // fig04 and fig08 are described with order-3 rotation; fig07 with a mirror.
  for (const std::string& stem : {"fig04", "fig08"}) {
    const SymmetryGroup g = group(stem);
    c.expect(g.rotation_order == 3, stem + " order " + std::to_string(g.rotation_order));
  }
  c.expect(group("fig07").mirror_count >= 1, "fig07 has no mirror");
  c.expect(group("fig10").mirror_count >= 1, "fig10 has no mirror");
  const SymmetryGroup f20 = group("fig20");
  c.expect(f20.mirror_angles.size() == 2 &&
               std::abs(std::abs(f20.mirror_angles[1] - f20.mirror_angles[0]) - kPi / 2) < 1e-6,
           "fig20 mirrors are not two perpendicular axes");
  for (const std::string& stem : {"fig19", "fig21"}) {
    const SymmetryGroup g = group(stem);
    c.expect(g.rotation_order == 2 && g.mirror_count == 0, stem + " is " + g.classification);
  }
  const SymmetryGroup v4 = group("fig16_v4");
  c.expect(v4.classification == "C_1", "fig16_v4 is " + v4.classification);
  c.note("fig05_v1 " + v1.classification);
  c.note("fig05_v2 " + v2.classification);
  c.note("fig20 " + f20.classification);
  return c;
}

Checks angles() {
  Checks c;
  const AngleListReport list = published_angle_list_check();
  c.expect(list.count == 11, "published list has " + std::to_string(list.count) + " values");
  c.expect(std::abs(list.sum - 360.0) <= 1e-10, "published sum off by " + fmt(list.sum - 360.0));
  double worst = 0.0;
  std::size_t fans = 0;
  for (const std::string& stem : figure_stems()) {
    const RefinedFigure& f = refined_figure(stem);
    for (VertexId v = 0; v < static_cast<VertexId>(f.graph.vertex_count()); ++v) {
      if (f.graph.degree(v) < 2) continue;
      double sum = 0.0;
      for (double a : angle_fan(f.graph, f.refined, v).angles_deg) sum += a;
      worst = std::max(worst, std::abs(sum - 360.0));
      ++fans;
    }
  }
  c.expect(worst <= 1e-9, "worst fan sum error " + fmt(worst));
  c.note("published sum error " + fmt(std::abs(list.sum - 360.0)));
  c.note(std::to_string(fans) + " fans, worst " + fmt(worst));
  return c;
}

Checks properties() {
  Checks c;
  const auto run = [&c](const std::string& name, const PropertyResult& p) {
    c.expect(p.pass, name + ": " + p.detail);
    c.note(name + " " + fmt(p.worst));
  };
  run("jacobian", jacobian_matches_finite_differences(7, 20));
  run("snapping", snapping_is_order_invariant(2024, 10));
  run("msg", msg_round_trip_is_identity());
  run("rank", rank_is_monotone_under_edge_deletion(11, 20));
  run("reversibility", flex_step_is_reversible());
  run("rhombus", square_steer_matches_rhombus());
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Checks()>>> criteria{
      {"figure ingestion table", ingestion},
      {"refinement", refinement},
      {"rigidity verdicts", rigidity},
      {"transformation event", transformation},
      {"symmetry", symmetry},
      {"angle list", angles},
      {"property suites", properties},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Checks result;
    try {
      result = run();
    } catch (const std::exception& e) {
      result.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << (result.ok() ? "PASS " : "FAIL ") << name << " (" << result.summary() << ")\n";
    for (const std::string& f : result.failures()) std::cout << "    " << f << '\n';
    failed += result.ok() ? 0 : 1;
  }
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
