#pragma once

#include <chrono>
#include <filesystem>
#include <memory>
#include <string>

#include "phishpond/frontdoor/registry.hpp"
#include "phishpond/persistence/profile.hpp"

namespace phishpond::frontdoor {

struct ServerOptions {
  std::string address = "127.0.0.1";
  unsigned short port = 8080;  // 0 picks a free port
  std::filesystem::path static_dir;  // web client assets; empty serves none
  // Real time between clock ticks. Each tick advances sessions by one
  // second of game time regardless.
  std::chrono::milliseconds tick_period{1000};
};

/// HTTP and websocket front end:
///   GET /play          upgrade to the message channel (one session per socket)
///   GET /profile/{id}  profile JSON, 404 if unknown
///   GET /...           static files from static_dir
/// run() serves on the calling thread until stop().
class Server {
 public:
  Server(SessionRegistry& registry, persistence::ProfileStore* store, ServerOptions opts);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  unsigned short port() const;
  void run();
  void stop();  // safe from any thread

  struct Impl;  // connection handlers in server.cpp need it

 private:
  std::unique_ptr<Impl> impl_;
};

}  // namespace phishpond::frontdoor
