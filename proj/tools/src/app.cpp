#include "matchstick/cli/app.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "matchstick/assembler.hpp"
#include "matchstick/cli/json_io.hpp"
#include "matchstick/cli/render.hpp"
#include "matchstick/cli/server.hpp"

namespace matchstick {
namespace {

namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Usage problems found after CLI11 parsing (bad flag values, missing input).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << text;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    const double x = std::stod(s, &used);
    if (used == s.size()) return x;
  } catch (const std::exception&) {
  }
  throw UsageError("invalid number '" + s + "' in " + what);
}

std::pair<int, int> parse_profile(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 2) throw UsageError("--profile expects m,n");
  try {
    return {std::stoi(parts[0]), std::stoi(parts[1])};
  } catch (const std::exception&) {
    throw UsageError("--profile expects two integers, got '" + s + "'");
  }
}

// A vertex given as an integer id or as a name from the MSG name lines.
VertexId parse_vertex(const std::string& token, const NameMap& names, std::size_t n) {
  VertexId v = -1;
  if (const auto named = find_named_vertex(names, token)) {
    v = *named;
  } else {
    try {
      std::size_t used = 0;
      v = std::stoi(token, &used);
      if (used != token.size()) v = -1;
    } catch (const std::exception&) {
      v = -1;
    }
  }
  if (v < 0 || static_cast<std::size_t>(v) >= n) throw UsageError("unknown vertex '" + token + "'");
  return v;
}

struct Input {
  Graph graph;
  Embedding embedding;
  NameMap names;
};

struct InputFlags {
  std::string msg;
  std::string tikz;
};

void add_input_flags(CLI::App* cmd, InputFlags& flags) {
  cmd->add_option("--msg", flags.msg, "Graph in MSG format");
  cmd->add_option("--tikz", flags.tikz, "TikZ picture body (ingested on the fly)");
}

Input load_input(const InputFlags& flags) {
  if (flags.msg.empty() == flags.tikz.empty()) throw UsageError("give exactly one of --msg or --tikz");
  if (!flags.msg.empty()) {
    MsgDocument doc = read_msg(read_text(flags.msg));
    return {std::move(doc.graph), std::move(doc.embedding), std::move(doc.names)};
  }
  IngestResult r = ingest_tikz(read_text(flags.tikz));
  return {std::move(r.graph), std::move(r.embedding), std::move(r.names)};
}

void print_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// --------------------------------------------------------------- commands

struct Context {
  std::ostream& out;
  std::ostream& err;
  bool as_json = false;
  std::string out_path;
};

int cmd_ingest(Context& ctx, const std::string& tikz, double snap_tol) {
  ToleranceProfile tol;
  tol.snap_tol = snap_tol;
  const IngestResult r = ingest_tikz(read_text(tikz), tol);
  const std::string msg = write_msg(r.graph, r.embedding, r.names);
  if (!ctx.out_path.empty()) write_text(ctx.out_path, msg);
  if (ctx.as_json) {
    print_json(ctx.out, {{"report", r.report}, {"markers", r.marker_vertices}});
  } else if (ctx.out_path.empty()) {
    ctx.out << msg;
  } else {
    ctx.out << "ingested " << r.report.n_vertices << " vertices, " << r.report.n_edges << " edges (scale "
            << r.report.scale << ", " << r.report.segments_split << " segments split)\n";
  }
  return kExitOk;
}

void print_violations(std::ostream& out, const std::vector<EdgePairViolation>& pairs,
                      const std::vector<VertexEdgeViolation>& vertex_edges) {
  for (const auto& v : pairs) {
    out << "  crossing: edges " << v.edge_a << " and " << v.edge_b << " (clearance " << v.clearance << ")\n";
  }
  for (const auto& v : vertex_edges) {
    out << "  vertex " << v.vertex << " touches edge " << v.edge << " (clearance " << v.clearance << ")\n";
  }
}

int cmd_verify(Context& ctx, const Input& in, const std::string& profile, std::optional<double> eps,
               double delta_cross, bool patch) {
  const auto [m, n] = parse_profile(profile);
  ToleranceProfile tol;
  tol.delta_cross = delta_cross;
  if (patch) {
    const PatchReport r = verify_patch(in.graph, in.embedding, m, n, tol, eps);
    if (ctx.as_json) {
      print_json(ctx.out, r);
    } else {
      ctx.out << (r.overall ? "VALID" : "INVALID") << " patch: " << in.graph.vertex_count() << " vertices, "
              << in.graph.edge_count() << " edges, " << r.boundary_count << " boundary vertices\n"
              << "  unit lengths: " << (r.unit_ok ? "ok" : "FAIL") << " (max deviation " << r.max_abs_length_deviation
              << ")\n  non-crossing: " << (r.crossing_ok ? "ok" : "FAIL") << "\n  interior degrees: "
              << (r.interior_degrees_ok ? "ok" : "FAIL") << "\n";
      print_violations(ctx.out, r.violating_edge_pairs, r.vertex_edge_violations);
    }
    return r.overall ? kExitOk : kExitFailure;
  }
  const VerificationCertificate c = verify_matchstick(in.graph, in.embedding, m, n, tol, eps);
  if (ctx.as_json) {
    print_json(ctx.out, c);
  } else {
    ctx.out << (c.overall ? "VALID" : "INVALID") << " (" << m << "," << n << ") matchstick graph: "
            << in.graph.vertex_count() << " vertices, " << in.graph.edge_count() << " edges\n"
            << "  unit lengths: " << (c.unit_ok ? "ok" : "FAIL") << " (max deviation " << c.max_abs_length_deviation
            << ")\n  non-crossing: " << (c.crossing_ok ? "ok" : "FAIL") << "\n  degrees:";
    for (const auto& [deg, count] : c.degree_profile.counts) ctx.out << ' ' << deg << "x" << count;
    ctx.out << (c.degrees_ok ? " ok" : " FAIL") << "\n  connected: " << (c.connected ? "yes" : "no")
            << "\n  vertex separation: " << (c.separation_ok ? "ok" : "FAIL") << "\n";
    print_violations(ctx.out, c.violating_edge_pairs, c.vertex_edge_violations);
  }
  return c.overall ? kExitOk : kExitFailure;
}

int cmd_refine(Context& ctx, const Input& in, const std::vector<std::string>& pairs, int max_iterations) {
  RefineOptions opts;
  opts.max_iterations = max_iterations;
  for (const std::string& spec : pairs) {
    const auto parts = split(spec, ',');
    if (parts.size() != 3) throw UsageError("--pair expects a,b,target");
    opts.extra_constraints.push_back({parse_vertex(parts[0], in.names, in.graph.vertex_count()),
                                      parse_vertex(parts[1], in.names, in.graph.vertex_count()),
                                      parse_double(parts[2], "--pair")});
  }
  const RefineResult r = refine(in.graph, in.embedding, opts);
  const std::string msg = write_msg(in.graph, r.embedding, in.names);
  if (!ctx.out_path.empty()) write_text(ctx.out_path, msg);
  if (ctx.as_json) {
    print_json(ctx.out, {{"report", r.report}, {"max_abs_length_deviation", max_abs_length_deviation(in.graph, r.embedding)}});
  } else {
    if (ctx.out_path.empty()) ctx.out << msg;
    ctx.err << (r.report.converged ? "converged" : "NOT converged") << " after " << r.report.iterations
            << " iterations; max |len-1| " << max_abs_length_deviation(in.graph, r.embedding) << ", max displacement "
            << r.report.displacement_max << "\n";
  }
  return r.report.converged ? kExitOk : kExitFailure;
}

int cmd_rigidity(Context& ctx, const Input& in, bool criticality, bool pebble) {
  const RigidityReport r = analyze(in.graph, in.embedding);
  if (ctx.as_json) {
    json j = {{"report", r}};
    if (criticality) j["criticality"] = criticality_scan(in.graph, in.embedding);
    if (pebble) j["pebble_game"] = pebble_game_2_3(in.graph);
    print_json(ctx.out, j);
    return kExitOk;
  }
  ctx.out << to_string(r.classification) << ": rank " << r.rank << ", internal dof " << r.internal_dof
          << ", gap ratio " << r.gap_ratio << "\n";
  if (r.unrefined) ctx.out << "  warning: edge lengths deviate from 1 by more than 1e-6; refine first\n";
  if (r.ill_conditioned) ctx.out << "  warning: small singular-value gap; rank may be unreliable\n";
  if (criticality) {
    const CriticalityScan s = criticality_scan(in.graph, in.embedding);
    std::size_t critical = 0;
    for (const auto& e : s.edges)
      if (e.dof_after_removal > s.internal_dof) ++critical;
    ctx.out << "  redundancy " << s.redundancy << ", critical edges " << critical << " of " << s.edges.size() << "\n";
  }
  if (pebble) ctx.out << "  pebble game generic dof " << pebble_game_2_3(in.graph).generic_dof << "\n";
  return kExitOk;
}

int cmd_flex(Context& ctx, const Input& in, const std::string& monitor_spec, const std::string& trace_path,
             FlexOptions opts) {
  const auto parts = split(monitor_spec, ',');
  if (parts.size() != 3) throw UsageError("--monitor expects a,b,target");
  const Monitor monitor{parse_vertex(parts[0], in.names, in.graph.vertex_count()),
                        parse_vertex(parts[1], in.names, in.graph.vertex_count()),
                        parse_double(parts[2], "--monitor")};
  Embedding start = in.embedding;
  if (max_abs_length_deviation(in.graph, start) > 1e-10) {
    const RefineResult r = refine(in.graph, start);
    if (!r.report.converged) throw Error(ErrorKind::Geometry, "input does not refine onto the unit-length manifold");
    start = r.embedding;
    ctx.err << "input refined before continuation (max displacement " << r.report.displacement_max << ")\n";
  }
  const SteerResult result = steer_to_event(in.graph, FlexState{start, 0.0, {}}, monitor, opts);
  if (!trace_path.empty()) write_text(trace_path, trace_to_csv(result.trace));
  if (!ctx.out_path.empty()) write_text(ctx.out_path, write_msg(in.graph, result.state.embedding, in.names));
  const double value = monitor_value(result.state.embedding, monitor);
  const double residual = max_abs_length_deviation(in.graph, result.state.embedding);
  if (ctx.as_json) {
    print_json(ctx.out, {{"steps", result.trace.back().step},
                         {"arclength", result.state.arclength},
                         {"monitor", value},
                         {"max_residual", residual},
                         {"event_crossing_free", result.event_crossing_free},
                         {"trace", result.trace}});
  } else {
    ctx.out << "event reached after " << result.trace.back().step << " steps, arclength "
            << result.state.arclength << "\n  dist(" << monitor.a << "," << monitor.b << ") = " << value
            << " (target " << monitor.target << ")\n  max |len-1| " << residual << "\n  crossing-free: "
            << (result.event_crossing_free ? "yes" : "no") << "\n";
  }
  return kExitOk;
}

int cmd_symmetry(Context& ctx, const Input& in, double sym_tol, bool refine_first) {
  Embedding emb = in.embedding;
  if (refine_first) emb = refine(in.graph, emb).embedding;
  const SymmetryGroup g = detect_symmetries(in.graph, emb, sym_tol);
  if (ctx.as_json) {
    print_json(ctx.out, g);
  } else {
    ctx.out << g.classification << ": rotation order " << g.rotation_order << ", " << g.mirror_count << " mirrors\n";
    for (double a : g.mirror_angles) ctx.out << "  mirror axis at " << radians_to_degrees(a) << " deg\n";
  }
  return kExitOk;
}

int cmd_angles(Context& ctx, const Input* in, std::optional<std::string> vertex, bool published) {
  if (published) {
    const AngleListReport r = published_angle_list_check();
    if (ctx.as_json) {
      print_json(ctx.out, {{"report", r}, {"angles_deg", kDegree11Angles}});
    } else {
      ctx.out << r.count << " angles, sum " << std::setprecision(17) << r.sum << ", min " << r.min << ", max "
              << r.max << "\n  sum within 1e-10 of 360: " << (r.sum_ok ? "yes" : "no") << "\n";
    }
    return r.sum_ok && r.range_ok ? kExitOk : kExitFailure;
  }
  if (in == nullptr) throw UsageError("angles needs --msg/--tikz or --published");
  std::vector<AngleFan> fans;
  if (vertex) {
    fans.push_back(angle_fan(in->graph, in->embedding, parse_vertex(*vertex, in->names, in->graph.vertex_count())));
  } else {
    for (VertexId v = 0; v < static_cast<VertexId>(in->graph.vertex_count()); ++v)
      if (in->graph.degree(v) >= 2) fans.push_back(angle_fan(in->graph, in->embedding, v));
  }
  if (ctx.as_json) {
    print_json(ctx.out, fans);
    return kExitOk;
  }
  for (const AngleFan& f : fans) {
    double sum = 0.0;
    ctx.out << "vertex " << f.center << ":";
    for (double a : f.angles_deg) {
      ctx.out << ' ' << a;
      sum += a;
    }
    ctx.out << " (sum " << sum << ")\n";
  }
  return kExitOk;
}

// Plan: {"snap_tol": x, "vertex_sep": x, "blocks": [{"msg": path, "isometry": {...}}]}.
// Paths are relative to the plan file; an isometry may give "angle_deg"
// instead of "angle".
int cmd_assemble(Context& ctx, const std::string& plan_path, bool refine_after) {
  const json plan = json::parse(read_text(plan_path));
  const fs::path base = fs::path(plan_path).parent_path();
  std::vector<Placement> placements;
  for (const json& block : plan.at("blocks")) {
    const fs::path msg_path = base / block.at("msg").get<std::string>();
    MsgDocument doc = read_msg(read_text(msg_path.string()));
    Isometry iso;
    if (block.contains("isometry")) {
      json iso_json = block.at("isometry");
      if (iso_json.contains("angle_deg")) iso_json["angle"] = degrees_to_radians(iso_json.at("angle_deg").get<double>());
      iso = iso_json.get<Isometry>();
    }
    placements.push_back({std::move(doc.graph), std::move(doc.embedding), iso});
  }
  MergeResult merged = merge(placements, plan.value("snap_tol", 1e-3), plan.value("vertex_sep", 1e-4));
  Embedding emb = merged.embedding;
  json report = {{"n_vertices", merged.graph.vertex_count()}, {"n_edges", merged.graph.edge_count()}};
  if (refine_after) {
    const RefineResult r = refine(merged.graph, emb);
    emb = r.embedding;
    report["refine"] = r.report;
  }
  report["max_abs_length_deviation"] = max_abs_length_deviation(merged.graph, emb);
  const std::string msg = write_msg(merged.graph, emb);
  if (!ctx.out_path.empty()) write_text(ctx.out_path, msg);
  if (ctx.as_json) {
    print_json(ctx.out, report);
  } else if (ctx.out_path.empty()) {
    ctx.out << msg;
  } else {
    ctx.out << "assembled " << merged.graph.vertex_count() << " vertices, " << merged.graph.edge_count()
            << " edges; max |len-1| " << report["max_abs_length_deviation"].get<double>() << "\n";
  }
  return kExitOk;
}

int cmd_render(Context& ctx, const Input& in, const std::string& highlight, bool no_dots) {
  SvgStyle style;
  style.vertex_dots = !no_dots;
  if (!highlight.empty())
    for (const std::string& t : split(highlight, ',')) style.highlight.push_back(parse_vertex(t, in.names, in.graph.vertex_count()));
  const std::string svg = render_svg(in.graph, in.embedding, style);
  if (ctx.out_path.empty()) {
    ctx.out << svg;
  } else {
    write_text(ctx.out_path, svg);
  }
  return kExitOk;
}

int cmd_serve(Context& ctx, const std::string& host, int port, const std::string& state_dir) {
  FlexServer server(state_dir);
  const int bound = server.bind(host, port);
  ctx.out << "listening on http://" << host << ":" << bound << " (" << server.session_count()
          << " sessions restored from " << state_dir << ")" << std::endl;
  server.listen();
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matchstick graph toolkit: ingest, verify, refine, analyze and flex unit-distance drawings"};
  app.require_subcommand(1);
  bool as_json = false;
  std::string out_path;
  app.add_flag("--json", as_json, "Machine-readable output");
  app.add_option("--out", out_path, "Write the primary artifact to this path");

  InputFlags input;

  auto* ingest_cmd = app.add_subcommand("ingest", "Convert a TikZ figure to MSG");
  std::string tikz_path;
  double snap_tol = ToleranceProfile{}.snap_tol;
  ingest_cmd->add_option("--tikz", tikz_path, "TikZ picture body")->required();
  ingest_cmd->add_option("--snap-tol", snap_tol, "Endpoint merge radius in figure units");

  auto* verify_cmd = app.add_subcommand("verify", "Check unit lengths, crossings and the degree profile");
  add_input_flags(verify_cmd, input);
  std::string profile;
  std::optional<double> eps;
  double delta_cross = ToleranceProfile{}.delta_cross;
  bool patch = false;
  verify_cmd->add_option("--profile", profile, "Degree profile m,n")->required();
  verify_cmd->add_option("--eps", eps, "Unit-length tolerance (default 1e-3)");
  verify_cmd->add_option("--delta-cross", delta_cross, "Minimum clearance between non-adjacent edges");
  verify_cmd->add_flag("--patch", patch, "Treat vertices of degree < m as boundary");

  auto* refine_cmd = app.add_subcommand("refine", "Levenberg-Marquardt polish onto exact unit lengths");
  add_input_flags(refine_cmd, input);
  std::vector<std::string> pairs;
  int max_iterations = RefineOptions{}.max_iterations;
  refine_cmd->add_option("--pair", pairs, "Extra distance constraint a,b,target (repeatable)");
  refine_cmd->add_option("--max-iterations", max_iterations, "Iteration budget");

  auto* rigidity_cmd = app.add_subcommand("rigidity", "Infinitesimal rigidity analysis");
  add_input_flags(rigidity_cmd, input);
  bool criticality = false, pebble = false;
  rigidity_cmd->add_flag("--criticality", criticality, "Scan every edge for criticality");
  rigidity_cmd->add_flag("--pebble", pebble, "Also run the (2,3) pebble game");

  auto* flex_cmd = app.add_subcommand("flex", "Steer a flexible graph until a vertex pair reaches a target distance");
  add_input_flags(flex_cmd, input);
  std::string monitor_spec, trace_path;
  FlexOptions flex_opts;
  flex_cmd->add_option("--monitor", monitor_spec, "a,b,target (ids or vertex names)")->required();
  flex_cmd->add_option("--trace", trace_path, "Write the continuation trace as CSV");
  flex_cmd->add_option("--step-init", flex_opts.step_init, "Initial step length");
  flex_cmd->add_option("--step-min", flex_opts.step_min, "Smallest step before giving up");
  flex_cmd->add_option("--step-max", flex_opts.step_max, "Largest step");
  flex_cmd->add_option("--max-steps", flex_opts.max_steps, "Step budget");
  flex_cmd->add_option("--crossing-every", flex_opts.crossing_check_every, "Check crossings every N steps (0: event only)");

  auto* symmetry_cmd = app.add_subcommand("symmetry", "Detect the isometry group of the drawing");
  add_input_flags(symmetry_cmd, input);
  double sym_tol = ToleranceProfile{}.sym_tol;
  bool refine_first = false;
  symmetry_cmd->add_option("--sym-tol", sym_tol, "Vertex matching radius");
  symmetry_cmd->add_flag("--refine", refine_first, "Refine before detection");

  auto* angles_cmd = app.add_subcommand("angles", "Angle fans around vertices");
  add_input_flags(angles_cmd, input);
  std::optional<std::string> vertex;
  bool published = false;
  angles_cmd->add_option("--vertex", vertex, "Only this vertex (id or name)");
  angles_cmd->add_flag("--published", published, "Check the published degree-11 angle list");

  auto* assemble_cmd = app.add_subcommand("assemble", "Place blocks by isometries and merge coincident vertices");
  std::string plan_path;
  bool no_refine = false;
  assemble_cmd->add_option("--plan", plan_path, "Assembly plan (JSON)")->required();
  assemble_cmd->add_flag("--no-refine", no_refine, "Skip the post-merge refinement");

  auto* render_cmd = app.add_subcommand("render", "Render the drawing as SVG");
  add_input_flags(render_cmd, input);
  std::string highlight;
  bool no_dots = false;
  render_cmd->add_option("--highlight", highlight, "Comma-separated vertices to highlight");
  render_cmd->add_flag("--no-dots", no_dots, "Omit vertex dots");

  auto* serve_cmd = app.add_subcommand("serve", "Serve the flex-session HTTP API");
  std::string host = "127.0.0.1", state_dir = "matchstick-state";
  int port = 8080;
  serve_cmd->add_option("--port", port, "TCP port (0 picks a free one)");
  serve_cmd->add_option("--host", host, "Interface to bind");
  serve_cmd->add_option("--state-dir", state_dir, "Directory for persisted sessions");

  for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  Context ctx{out, err, as_json, out_path};
  try {
    if (ingest_cmd->parsed()) return cmd_ingest(ctx, tikz_path, snap_tol);
    if (assemble_cmd->parsed()) return cmd_assemble(ctx, plan_path, !no_refine);
    if (serve_cmd->parsed()) return cmd_serve(ctx, host, port, state_dir);
    if (angles_cmd->parsed()) {
      if (published) return cmd_angles(ctx, nullptr, vertex, true);
      const Input in = load_input(input);
      return cmd_angles(ctx, &in, vertex, false);
    }
    const Input in = load_input(input);
    if (verify_cmd->parsed()) return cmd_verify(ctx, in, profile, eps, delta_cross, patch);
    if (refine_cmd->parsed()) return cmd_refine(ctx, in, pairs, max_iterations);
    if (rigidity_cmd->parsed()) return cmd_rigidity(ctx, in, criticality, pebble);
    if (flex_cmd->parsed()) return cmd_flex(ctx, in, monitor_spec, trace_path, flex_opts);
    if (symmetry_cmd->parsed()) return cmd_symmetry(ctx, in, sym_tol, refine_first);
    if (render_cmd->parsed()) return cmd_render(ctx, in, highlight, no_dots);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return e.kind() == ErrorKind::Parse ? kExitUsage : kExitFailure;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace matchstick
