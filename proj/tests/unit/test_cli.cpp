#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "fixtures.hpp"
#include "matchstick/cli/app.hpp"
#include "matchstick/cli/json_io.hpp"
#include "matchstick/cli/render.hpp"
#include "matchstick/refiner.hpp"
#include "matchstick/rigidity.hpp"
#include "matchstick/symmetry.hpp"
#include "matchstick/verifier.hpp"

using namespace matchstick;
using namespace matchstick::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "matchstick");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string golden(const std::string& name) { return asset_path("golden/" + name + ".msg"); }

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("matchstick_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

template <class T>
void check_round_trip(const T& value) {
  const json once = value;
  const T back = once.get<T>();
  const json twice = back;
  CHECK(once == twice);
}

}  // namespace

TEST_CASE("verify harborth as (4,4)") {
  const Run r = run({"verify", "--msg", golden("harborth"), "--profile", "4,4"});
  CHECK(r.code == 0);
  CHECK(r.out.find("VALID (4,4)") != std::string::npos);
  CHECK(r.out.find("52 vertices, 104 edges") != std::string::npos);
}

TEST_CASE("verify a crossing drawing lists the violating pair") {
  const fs::path path = scratch_dir() / "cross.msg";
  std::ofstream(path) << "v 0 0 0\nv 1 0.7071067811865476 0.7071067811865476\nv 2 0 0.7071067811865476\n"
                         "v 3 0.7071067811865476 0\ne 0 1\ne 2 3\n";
  const Run r = run({"verify", "--msg", path.string(), "--profile", "1,1"});
  CHECK(r.code == 1);
  CHECK(r.out.find("crossing: edges 0 and 1") != std::string::npos);
}

TEST_CASE("rigidity of the square") {
  const Run r = run({"rigidity", "--msg", golden("square"), "--pebble"});
  CHECK(r.code == 0);
  CHECK(r.out.find("flexible") != std::string::npos);
  CHECK(r.out.find("internal dof 1") != std::string::npos);

  const Run j = run({"--json", "rigidity", "--msg", golden("square")});
  REQUIRE(j.code == 0);
  const RigidityReport report = json::parse(j.out).at("report").get<RigidityReport>();
  CHECK(report.internal_dof == 1);
  CHECK(report.classification == Classification::Flexible);
}

TEST_CASE("usage and parse errors exit 2") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "--msg", golden("harborth")}).code == 2);
  CHECK(run({"verify", "--msg", golden("harborth"), "--profile", "4"}).code == 2);
  CHECK(run({"verify", "--msg", golden("harborth"), "--tikz", "x", "--profile", "4,4"}).code == 2);
  CHECK(run({"verify", "--msg", "/nonexistent.msg", "--profile", "4,4"}).code == 2);

  const fs::path bad = scratch_dir() / "bad.msg";
  std::ofstream(bad) << "v 0 0 0\nbogus line\n";
  const Run r = run({"verify", "--msg", bad.string(), "--profile", "4,4"});
  CHECK(r.code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("runtime errors exit 1") {
  // The triangle has no flex.
  CHECK(run({"flex", "--msg", golden("triangle"), "--monitor", "0,1,2"}).code == 1);
}

TEST_CASE("help exits 0") { CHECK(run({"--help"}).code == 0); }

TEST_CASE("ingest reproduces the golden file") {
  const Run r = run({"ingest", "--tikz", asset_path("figures/fig02_harborth.tikz")});
  CHECK(r.code == 0);
  CHECK(r.out == read_file(golden("harborth")));

  const Run j = run({"--json", "ingest", "--tikz", asset_path("figures/fig05_v2.tikz")});
  REQUIRE(j.code == 0);
  const json parsed = json::parse(j.out);
  const IngestReport report = parsed.at("report").get<IngestReport>();
  CHECK(report.n_vertices == 60);
  CHECK(report.n_edges == 120);
  check_round_trip(report);
}

TEST_CASE("refine with a named pair constraint") {
  const fs::path out = scratch_dir() / "v2_refined.msg";
  const Run r = run({"--json", "--out", out.string(), "refine", "--msg", golden("fig5_v2"), "--pair", "a,b,2"});
  REQUIRE(r.code == 0);
  const json parsed = json::parse(r.out);
  CHECK(parsed.at("max_abs_length_deviation").get<double>() <= 1e-12);
  CHECK(parsed.at("report").get<RefineReport>().converged);

  const MsgDocument doc = read_msg(read_file(out.string()));
  const auto a = find_named_vertex(doc.names, "a");
  const auto b = find_named_vertex(doc.names, "b");
  REQUIRE(a.has_value());
  REQUIRE(b.has_value());
  CHECK(std::abs(distance(doc.embedding[static_cast<std::size_t>(*a)], doc.embedding[static_cast<std::size_t>(*b)]) - 2.0) <=
        1e-12);
}

TEST_CASE("flex steers the twelve-fold graph and writes a trace") {
  const fs::path trace = scratch_dir() / "trace.csv";
  const Run r = run({"--json", "flex", "--msg", golden("fig5_v1"), "--monitor", "0,19,2", "--trace", trace.string()});
  REQUIRE(r.code == 0);
  const json parsed = json::parse(r.out);
  CHECK(std::abs(parsed.at("monitor").get<double>() - 2.0) <= 1e-9);
  CHECK(parsed.at("max_residual").get<double>() <= 1e-10);
  CHECK(parsed.at("event_crossing_free").get<bool>());
  const auto rows = parsed.at("trace").get<std::vector<TraceRow>>();
  CHECK(rows.size() >= 2);
  const std::string csv = read_file(trace.string());
  CHECK(csv.rfind("step,arclength,monitor,max_residual\n", 0) == 0);
}

TEST_CASE("symmetry and angles subcommands") {
  const Run s = run({"--json", "symmetry", "--msg", golden("fig5_v1"), "--refine"});
  REQUIRE(s.code == 0);
  const SymmetryGroup group = json::parse(s.out).get<SymmetryGroup>();
  CHECK(group.rotation_order == 12);
  check_round_trip(group);

  const Run a = run({"--json", "angles", "--published"});
  REQUIRE(a.code == 0);
  const AngleListReport report = json::parse(a.out).at("report").get<AngleListReport>();
  CHECK(report.count == 11);
  CHECK(report.sum_ok);

  const Run fans = run({"--json", "angles", "--msg", golden("triangle")});
  REQUIRE(fans.code == 0);
  const auto parsed = json::parse(fans.out).get<std::vector<AngleFan>>();
  REQUIRE(parsed.size() == 3);
  for (const AngleFan& f : parsed) CHECK(f.angles_deg.front() == doctest::Approx(60.0));
}

TEST_CASE("assemble two triangles from a plan") {
  const fs::path dir = scratch_dir();
  fs::copy_file(golden("triangle"), dir / "triangle.msg", fs::copy_options::overwrite_existing);
  const MsgDocument tri = read_msg(read_file(golden("triangle")));
  const Point2 a = tri.embedding[0], b = tri.embedding[1];
  const json plan = {{"snap_tol", 1e-3},
                     {"blocks",
                      {{{"msg", "triangle.msg"}},
                       {{"msg", "triangle.msg"},
                        {"isometry", Isometry::reflection(std::atan2(b.y - a.y, b.x - a.x), a)}}}}};
  std::ofstream(dir / "plan.json") << plan.dump();
  const Run r = run({"--json", "assemble", "--plan", (dir / "plan.json").string()});
  REQUIRE(r.code == 0);
  const json parsed = json::parse(r.out);
  CHECK(parsed.at("n_vertices").get<int>() == 4);
  CHECK(parsed.at("n_edges").get<int>() == 5);
  CHECK(parsed.at("max_abs_length_deviation").get<double>() <= 1e-12);
}

TEST_CASE("render_svg") {
  const Drawing t = unit_triangle();
  CHECK(count(render_svg(t.graph, t.embedding), "<line") == 3);
  const IngestResult fig2 = ingest_figure("fig02_harborth");
  CHECK(count(render_svg(fig2.graph, fig2.embedding), "<line") == 104);
  SvgStyle plain;
  plain.vertex_dots = false;
  CHECK(count(render_svg(t.graph, t.embedding, plain), "<circle") == 0);
  SvgStyle marked;
  marked.highlight = {0};
  CHECK(count(render_svg(t.graph, t.embedding, marked), "<circle") == 4);
  try {
    render_svg(Graph(), Embedding());
    FAIL("no error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidArgument);
  }

  const Run r = run({"render", "--msg", golden("harborth"), "--highlight", "0,1"});
  CHECK(r.code == 0);
  CHECK(count(r.out, "<line") == 104);
}

TEST_CASE("subcommands are deterministic") {
  const std::vector<std::vector<std::string>> commands{
      {"--json", "verify", "--msg", golden("harborth"), "--profile", "4,4"},
      {"--json", "rigidity", "--msg", golden("fig01b_double_kite"), "--criticality", "--pebble"},
      {"--json", "flex", "--msg", golden("square"), "--monitor", "0,2,1.7"},
      {"render", "--msg", golden("fig04")},
      {"--json", "symmetry", "--msg", golden("fig20"), "--refine"}};
  for (const auto& cmd : commands) {
    const Run a = run(cmd);
    const Run b = run(cmd);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("json round trips of every report") {
  const RefinedFigure& f = refined_figure("fig01b_double_kite");
  check_round_trip(verify_matchstick(f.graph, f.refined, 2, 4));
  check_round_trip(verify_patch(f.graph, f.refined, 4, 4));
  check_round_trip(refine(f.graph, f.raw).report);
  check_round_trip(criticality_scan(f.graph, f.refined));
  check_round_trip(pebble_game_2_3(f.graph));
  check_round_trip(analyze(f.graph, f.refined));
  check_round_trip(detect_symmetries(f.graph, f.refined));
  check_round_trip(published_angle_list_check());
  check_round_trip(Isometry::reflection(0.3, {1, 2}));
  check_round_trip(TraceRow{3, 0.5, 1.9, 1e-15, true});
  check_round_trip(TraceRow{4, 0.6, 1.95, 2e-15, std::nullopt});

  // A rigid framework's gap ratio is infinite and survives as null.
  const Drawing t = unit_triangle();
  const RigidityReport tri = analyze(t.graph, t.embedding);
  const json j = tri;
  CHECK(j.at("gap_ratio").is_null());
  CHECK(std::isinf(j.get<RigidityReport>().gap_ratio));

  const Embedding emb = f.refined;
  CHECK(embedding_from_json(embedding_to_json(emb)) == emb);
}

TEST_CASE("cleanup") { fs::remove_all(scratch_dir()); }
