#pragma once

#include <atomic>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "phishpond/config_io.hpp"
#include "phishpond/frontdoor/protocol.hpp"
#include "phishpond/game/session.hpp"
#include "phishpond/persistence/profile.hpp"
#include "phishpond/persistence/replay.hpp"

namespace phishpond::frontdoor {

using ConnectionId = std::uint64_t;

/// Maps connections to at most one live session each and turns client
/// messages into server messages. Every rule decision is the engine's; this
/// layer only sequences calls and shapes replies. Messages for one
/// connection are processed one at a time; distinct connections proceed in
/// parallel.
///
/// With a store, each session is logged to <data>/sessions/<id>.jsonl and
/// the summaries of named players are added to their profiles.
class SessionRegistry {
 public:
  SessionRegistry(const game::GameEngine& engine, const Ruleset& rules, persistence::ProfileStore* store,
                  std::uint64_t base_seed);

  ConnectionId connect();
  void disconnect(ConnectionId id);
  std::size_t connection_count() const;

  // Never throws for bad input: every message gets at least one reply.
  std::vector<nlohmann::json> handle(ConnectionId id, std::string_view text);
  std::vector<nlohmann::json> handle(ConnectionId id, const ClientMessage& msg);

  // Advances the clock of the connection's live session. Yields a clock
  // message, or the summary when time runs out; nothing without a session.
  std::vector<nlohmann::json> tick(ConnectionId id, Millis elapsed);
  std::vector<std::pair<ConnectionId, std::vector<nlohmann::json>>> tick_all(Millis elapsed);

  // Event log of the connection's latest session (live or ended).
  std::vector<persistence::SessionEvent> session_events(ConnectionId id) const;

 private:
  struct Connection {
    std::mutex mu;
    std::unique_ptr<persistence::SessionRecorder> recorder;
    std::string display_name;
  };

  std::shared_ptr<Connection> find(ConnectionId id) const;
  std::vector<nlohmann::json> start(Connection& c, const StartSession& m);
  std::vector<nlohmann::json> finish(Connection& c);
  std::vector<nlohmann::json> after_decision(Connection& c);

  const game::GameEngine& engine_;
  const Ruleset& rules_;
  std::string config_hash_;
  persistence::ProfileStore* store_;
  std::uint64_t base_seed_;
  std::atomic<std::uint64_t> next_session_{1};
  std::atomic<ConnectionId> next_id_{1};

  mutable std::mutex mu_;
  std::map<ConnectionId, std::shared_ptr<Connection>> connections_;
};

}  // namespace phishpond::frontdoor
