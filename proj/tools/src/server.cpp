#include "matchstick/cli/server.hpp"

#include <fstream>
#include <sstream>

#include "matchstick/cli/json_io.hpp"

// After the Eigen headers: <resolv.h>, pulled in by httplib, defines `_res`.
#include <httplib.h>

namespace matchstick {
namespace {

namespace fs = std::filesystem;

int status_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse:
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidGraph:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::DuplicateEdge:
    case ErrorKind::DegenerateInput:
      return 400;
    default:
      return 422;
  }
}

void reply(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void reply_error(httplib::Response& res, int status, const std::string& message) {
  reply(res, status, {{"error", message}});
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + tmp.string());
    out << text;
  }
  fs::rename(tmp, path);
}

FlexState snapshot(FlexSession& s) {
  std::lock_guard lock(s.state_mutex);
  return s.state;
}

void store(FlexSession& s, FlexState next) {
  std::lock_guard lock(s.state_mutex);
  s.state = std::move(next);
}

json graph_json(const FlexSession& s, const Embedding& emb) {
  json edges = json::array();
  for (const Edge& e : s.graph.edges()) edges.push_back({e.u, e.v});
  json markers = json::array();
  for (const auto& [id, name] : s.names) markers.push_back({{"id", id}, {"name", name}});
  return {{"session_id", s.id}, {"vertices", embedding_to_json(emb)}, {"edges", edges}, {"markers", markers}};
}

json report_json(const FlexSession& s, const Embedding& emb) {
  const std::vector<int> degrees = s.graph.degrees();
  const auto [lo, hi] = std::minmax_element(degrees.begin(), degrees.end());
  json out = {{"max_residual", max_abs_length_deviation(s.graph, emb)}};
  out["verification"] = verify_matchstick(s.graph, emb, *lo, *hi);
  if (s.graph.connected()) {
    const RigidityReport r = analyze(s.graph, emb);
    out["rigidity"] = {{"rank", r.rank},
                       {"internal_dof", r.internal_dof},
                       {"classification", to_string(r.classification)},
                       {"gap_ratio", std::isfinite(r.gap_ratio) ? json(r.gap_ratio) : json(nullptr)},
                       {"unrefined", r.unrefined},
                       {"ill_conditioned", r.ill_conditioned}};
  } else {
    out["rigidity"] = nullptr;
  }
  return out;
}

// Runs `fn` with the session held exclusively; concurrent mutators get 409.
template <class Fn>
void exclusive(const std::shared_ptr<FlexSession>& s, httplib::Response& res, Fn&& fn) {
  std::unique_lock lock(s->busy, std::try_to_lock);
  if (!lock.owns_lock()) {
    reply_error(res, 409, "session busy");
    return;
  }
  fn();
}

}  // namespace

FlexServer::FlexServer(fs::path state_dir) : state_dir_(std::move(state_dir)), http_(std::make_unique<httplib::Server>()) {
  fs::create_directories(state_dir_);
  // httplib's default also sets SO_REUSEPORT, which lets a second server share a busy port.
  http_->set_socket_options([](auto sock) {
    int yes = 1;
    ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof(yes));
  });
  load_existing();
  install_routes();
}

FlexServer::~FlexServer() { stop(); }

int FlexServer::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = http_->bind_to_any_port(host);
    if (bound < 0) throw Error(ErrorKind::InvalidArgument, "cannot bind to " + host);
    return bound;
  }
  if (!http_->bind_to_port(host, port)) {
    throw Error(ErrorKind::InvalidArgument, "port " + std::to_string(port) + " is not available on " + host);
  }
  return port;
}

void FlexServer::listen() { http_->listen_after_bind(); }

void FlexServer::stop() {
  if (http_) http_->stop();
}

std::size_t FlexServer::session_count() const {
  std::lock_guard lock(sessions_mutex_);
  return sessions_.size();
}

std::shared_ptr<FlexSession> FlexServer::find(const std::string& id) const {
  std::lock_guard lock(sessions_mutex_);
  const auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

std::shared_ptr<FlexSession> FlexServer::create(const std::string& msg_text) {
  MsgDocument doc = read_msg(msg_text);
  auto s = std::make_shared<FlexSession>();
  s->graph = std::move(doc.graph);
  s->initial = doc.embedding;
  s->names = std::move(doc.names);
  s->state = FlexState{std::move(doc.embedding), 0.0, {}};
  {
    std::lock_guard lock(sessions_mutex_);
    s->id = "s" + std::to_string(next_id_++);
    sessions_[s->id] = s;
  }
  write_file(state_dir_ / (s->id + ".msg"), write_msg(s->graph, s->initial, s->names));
  persist(*s);
  return s;
}

void FlexServer::persist(FlexSession& s) const {
  const FlexState state = snapshot(s);
  write_file(state_dir_ / (s.id + ".current.msg"), write_msg(s.graph, state.embedding, s.names));
  const json meta = {{"session_id", s.id},
                     {"n_vertices", s.graph.vertex_count()},
                     {"n_edges", s.graph.edge_count()},
                     {"arclength", state.arclength}};
  write_file(state_dir_ / (s.id + ".json"), meta.dump(2));
}

void FlexServer::load_existing() {
  for (const auto& entry : fs::directory_iterator(state_dir_)) {
    const fs::path path = entry.path();
    if (path.extension() != ".json") continue;
    const json meta = json::parse(read_file(path));
    const std::string id = meta.at("session_id").get<std::string>();
    MsgDocument initial = read_msg(read_file(state_dir_ / (id + ".msg")));
    const fs::path current_path = state_dir_ / (id + ".current.msg");
    MsgDocument current = fs::exists(current_path) ? read_msg(read_file(current_path)) : initial;

    auto s = std::make_shared<FlexSession>();
    s->id = id;
    s->graph = std::move(initial.graph);
    s->initial = std::move(initial.embedding);
    s->names = std::move(initial.names);
    s->state = FlexState{std::move(current.embedding), meta.value("arclength", 0.0), {}};
    sessions_[id] = s;
    if (id.size() > 1 && id[0] == 's') next_id_ = std::max(next_id_, std::stoul(id.substr(1)) + 1);
  }
}

void FlexServer::install_routes() {
  http_->set_default_headers({{"Access-Control-Allow-Origin", "*"}});
  http_->set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    try {
      std::rethrow_exception(ep);
    } catch (const Error& e) {
      reply_error(res, status_for(e.kind()), e.what());
    } catch (const json::exception& e) {
      reply_error(res, 400, std::string("bad request body: ") + e.what());
    } catch (const std::exception& e) {
      reply_error(res, 500, e.what());
    }
  });

  http_->Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    const json body = json::parse(req.body);
    const auto s = create(body.at("msg_text").get<std::string>());
    reply(res, 201, {{"session_id", s->id}, {"n_vertices", s->graph.vertex_count()}, {"n_edges", s->graph.edge_count()}});
  });

  // Wraps a per-session handler with the 404 lookup.
  auto with_session = [this](auto handler) {
    return [this, handler](const httplib::Request& req, httplib::Response& res) {
      const auto s = find(req.matches[1]);
      if (!s) {
        reply_error(res, 404, "unknown session '" + std::string(req.matches[1]) + "'");
        return;
      }
      handler(s, req, res);
    };
  };

  http_->Get(R"(/sessions/([^/]+)/graph)", with_session([](auto s, const httplib::Request&, httplib::Response& res) {
               reply(res, 200, graph_json(*s, snapshot(*s).embedding));
             }));

  http_->Get(R"(/sessions/([^/]+)/report)", with_session([](auto s, const httplib::Request&, httplib::Response& res) {
               reply(res, 200, report_json(*s, snapshot(*s).embedding));
             }));

  http_->Get(R"(/sessions/([^/]+)/flexmodes)",
             with_session([](auto s, const httplib::Request&, httplib::Response& res) {
               const RigidityReport r = analyze(s->graph, snapshot(*s).embedding);
               json modes = json::array();
               for (const Eigen::VectorXd& f : r.flex_basis) modes.push_back(std::vector<double>(f.data(), f.data() + f.size()));
               reply(res, 200, {{"internal_dof", r.internal_dof}, {"modes", modes}});
             }));

  http_->Post(R"(/sessions/([^/]+)/step)", with_session([this](auto s, const httplib::Request& req, httplib::Response& res) {
                const json body = json::parse(req.body);
                exclusive(s, res, [&] {
                  const FlexState current = snapshot(*s);
                  Eigen::VectorXd direction;
                  if (body.contains("mode_index")) {
                    const RigidityReport r = analyze(s->graph, current.embedding);
                    const int k = body.at("mode_index").get<int>();
                    if (k < 0 || k >= r.internal_dof) {
                      throw Error(ErrorKind::IndexOutOfRange, "mode_index " + std::to_string(k) + " out of range");
                    }
                    direction = r.flex_basis[static_cast<std::size_t>(k)];
                  } else if (body.contains("direction")) {
                    const auto d = body.at("direction").get<std::vector<double>>();
                    direction = project_to_flex_space(
                        s->graph, current.embedding,
                        Eigen::Map<const Eigen::VectorXd>(d.data(), static_cast<Eigen::Index>(d.size())));
                  } else {
                    throw Error(ErrorKind::InvalidArgument, "step needs mode_index or direction");
                  }
                  FlexState next = flex_step(s->graph, current, direction, body.at("h").get<double>());
                  const double residual = max_abs_length_deviation(s->graph, next.embedding);
                  const json out = {{"vertices", embedding_to_json(next.embedding)},
                                    {"max_residual", residual},
                                    {"arclength", next.arclength}};
                  store(*s, std::move(next));
                  persist(*s);
                  reply(res, 200, out);
                });
              }));

  http_->Post(R"(/sessions/([^/]+)/steer)", with_session([this](auto s, const httplib::Request& req, httplib::Response& res) {
                const json body = json::parse(req.body);
                exclusive(s, res, [&] {
                  const Monitor monitor{body.at("a").get<VertexId>(), body.at("b").get<VertexId>(),
                                        body.value("target", 2.0)};
                  SteerResult result = steer_to_event(s->graph, snapshot(*s), monitor);
                  const json out = {{"steps", result.trace.back().step},
                                    {"arclength", result.state.arclength},
                                    {"monitor", monitor_value(result.state.embedding, monitor)},
                                    {"max_residual", max_abs_length_deviation(s->graph, result.state.embedding)},
                                    {"event_crossing_free", result.event_crossing_free},
                                    {"trace", result.trace},
                                    {"vertices", embedding_to_json(result.state.embedding)}};
                  store(*s, std::move(result.state));
                  persist(*s);
                  reply(res, 200, out);
                });
              }));

  http_->Post(R"(/sessions/([^/]+)/reset)", with_session([this](auto s, const httplib::Request&, httplib::Response& res) {
                exclusive(s, res, [&] {
                  store(*s, FlexState{s->initial, 0.0, {}});
                  persist(*s);
                  reply(res, 200, {{"vertices", embedding_to_json(s->initial)}, {"arclength", 0.0}});
                });
              }));
}

}  // namespace matchstick
