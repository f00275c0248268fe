#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "matchstick/flexer.hpp"
#include "matchstick/ingest.hpp"

namespace httplib {
class Server;
}

namespace matchstick {

/// One uploaded graph and its continuation state.
struct FlexSession {
  std::string id;
  Graph graph;
  Embedding initial;
  NameMap names;
  FlexState state;            // guarded by state_mutex
  std::mutex state_mutex;     // held briefly to copy state in or out
  std::mutex busy;            // held for the duration of a mutating request
};

/// HTTP API over flex sessions. Sessions are written to `state_dir` as
/// <id>.msg (initial embedding), <id>.current.msg and <id>.json, and are
/// reloaded from there on construction.
class FlexServer {
 public:
  explicit FlexServer(std::filesystem::path state_dir);
  ~FlexServer();
  FlexServer(const FlexServer&) = delete;
  FlexServer& operator=(const FlexServer&) = delete;

  /// Binds to host:port (port 0 picks a free port) and returns the bound
  /// port. Throws InvalidArgument when the port cannot be bound.
  int bind(const std::string& host, int port);
  /// Serves until stop() is called. Requires a prior bind().
  void listen();
  void stop();

  std::size_t session_count() const;
  /// Null when the id is unknown.
  std::shared_ptr<FlexSession> session(const std::string& id) const { return find(id); }

 private:
  void install_routes();
  std::shared_ptr<FlexSession> find(const std::string& id) const;
  std::shared_ptr<FlexSession> create(const std::string& msg_text);
  void persist(FlexSession& s) const;
  void load_existing();

  std::filesystem::path state_dir_;
  std::unique_ptr<httplib::Server> http_;
  mutable std::mutex sessions_mutex_;
  std::map<std::string, std::shared_ptr<FlexSession>> sessions_;
  unsigned long next_id_ = 1;
};

}  // namespace matchstick
