#include "phishpond/frontdoor/registry.hpp"

#include <cstdio>

#include "phishpond/error.hpp"
#include "phishpond/prng.hpp"

namespace phishpond::frontdoor {

using nlohmann::json;

namespace {

bool live(const std::unique_ptr<persistence::SessionRecorder>& r) { return r && r->started() && !r->ended(); }

json rule_violation(const Error& e) {
  return error_message("rule_violation", std::string(to_string(e.code())) + ": " + e.detail());
}

}  // namespace

SessionRegistry::SessionRegistry(const game::GameEngine& engine, const Ruleset& rules,
                                 persistence::ProfileStore* store, std::uint64_t base_seed)
    : engine_(engine), rules_(rules), config_hash_(rules.hash()), store_(store), base_seed_(base_seed) {}

ConnectionId SessionRegistry::connect() {
  const auto id = next_id_++;
  std::lock_guard guard(mu_);
  connections_.emplace(id, std::make_shared<Connection>());
  return id;
}

void SessionRegistry::disconnect(ConnectionId id) {
  std::lock_guard guard(mu_);
  connections_.erase(id);
}

std::size_t SessionRegistry::connection_count() const {
  std::lock_guard guard(mu_);
  return connections_.size();
}

std::shared_ptr<SessionRegistry::Connection> SessionRegistry::find(ConnectionId id) const {
  std::lock_guard guard(mu_);
  const auto it = connections_.find(id);
  return it == connections_.end() ? nullptr : it->second;
}

std::vector<json> SessionRegistry::handle(ConnectionId id, std::string_view text) {
  ClientMessage msg;
  try {
    msg = parse_client_message(text);
  } catch (const BadMessage& e) {
    return {error_message("bad_message", e.what())};
  }
  return handle(id, msg);
}

std::vector<json> SessionRegistry::handle(ConnectionId id, const ClientMessage& msg) {
  const auto conn = find(id);
  if (!conn) return {error_message("no_session", "connection is not registered")};
  std::lock_guard guard(conn->mu);
  auto& c = *conn;
  try {
    if (const auto* start_msg = std::get_if<StartSession>(&msg)) return start(c, *start_msg);
    if (!live(c.recorder)) return {error_message("no_session", "no session is in progress")};
    auto& rec = *c.recorder;

    if (const auto* a = std::get_if<ActionRequest>(&msg)) {
      if (a->move == PlayerMove::Teacher) {
        const auto out = rec.ask_teacher();
        return {outcome_message(out, rec.state())};
      }
      const auto at = rec.state().elapsed;
      const auto out = rec.act(a->move == PlayerMove::Eat ? game::Action::Eat : game::Action::Reject, at);
      auto replies = after_decision(c);
      replies.insert(replies.begin(), outcome_message(out, rec.state()));
      return replies;
    }
    if (std::holds_alternative<NextLevel>(msg)) {
      rec.advance_level();
      return {level_started_message(rec.state(), engine_.config()), worm_message(rec.state())};
    }
    rec.quit();
    return finish(c);
  } catch (const Error& e) {
    return {rule_violation(e)};
  }
}

std::vector<json> SessionRegistry::start(Connection& c, const StartSession& m) {
  if (live(c.recorder))
    return {error_message("rule_violation", "a session is already in progress on this connection")};
  const auto n = next_session_++;
  const auto seed = m.seed ? *m.seed : derive_seed(base_seed_, n);
  char id[48];
  std::snprintf(id, sizeof id, "s-%016llx-%llu", static_cast<unsigned long long>(seed),
                static_cast<unsigned long long>(n));

  persistence::EventLog log;
  if (store_) log = persistence::EventLog::create(store_->session_log_path(id));
  auto rec = std::make_unique<persistence::SessionRecorder>(engine_, rules_.ttat, config_hash_, std::move(log));
  rec->start(m.mode, seed, id, m.player_id);
  c.recorder = std::move(rec);
  c.display_name = m.display_name;
  return {session_started_message(c.recorder->state(), engine_.config()), worm_message(c.recorder->state())};
}

std::vector<json> SessionRegistry::after_decision(Connection& c) {
  const auto& s = c.recorder->state();
  switch (s.phase) {
    case game::Phase::InLevel: return {worm_message(s)};
    case game::Phase::LevelComplete: {
      std::vector<json> out{level_complete_message(s)};
      if (!next_tier(s.level)) {
        auto tail = finish(c);
        out.insert(out.end(), tail.begin(), tail.end());
      }
      return out;
    }
    case game::Phase::GameOver:
    case game::Phase::Finished: return finish(c);
  }
  return {};
}

std::vector<json> SessionRegistry::finish(Connection& c) {
  const auto& end = c.recorder->finish();
  std::vector<json> out{summary_message(end.summary, end.constructs)};
  const auto& player = c.recorder->player_id();
  if (store_ && !player.empty()) {
    try {
      store_->record_session(player, c.display_name,
                             persistence::ProfileSession{end.summary.session_id, end.summary, end.constructs});
    } catch (const Error& e) {
      out.push_back(error_message("storage_failure", e.detail()));
    }
  }
  return out;
}

std::vector<json> SessionRegistry::tick(ConnectionId id, Millis elapsed) {
  const auto conn = find(id);
  if (!conn) return {};
  std::lock_guard guard(conn->mu);
  auto& c = *conn;
  if (!live(c.recorder) || c.recorder->state().phase != game::Phase::InLevel) return {};
  try {
    c.recorder->tick(elapsed);
    if (c.recorder->state().phase == game::Phase::GameOver) return finish(c);
    return {clock_message(c.recorder->state())};
  } catch (const Error& e) {
    return {rule_violation(e)};
  }
}

std::vector<std::pair<ConnectionId, std::vector<json>>> SessionRegistry::tick_all(Millis elapsed) {
  std::vector<ConnectionId> ids;
  {
    std::lock_guard guard(mu_);
    for (const auto& [id, _] : connections_) ids.push_back(id);
  }
  std::vector<std::pair<ConnectionId, std::vector<json>>> out;
  for (const auto id : ids) {
    auto msgs = tick(id, elapsed);
    if (!msgs.empty()) out.emplace_back(id, std::move(msgs));
  }
  return out;
}

std::vector<persistence::SessionEvent> SessionRegistry::session_events(ConnectionId id) const {
  const auto conn = find(id);
  if (!conn) throw Error(ErrorCode::NotFound, "connection is not registered");
  std::lock_guard guard(conn->mu);
  if (!conn->recorder) return {};
  return conn->recorder->log().events();
}

}  // namespace phishpond::frontdoor
