#pragma once

#include <optional>
#include <string>
#include <vector>

#include "phishpond/game/session.hpp"
#include "phishpond/persistence/event_log.hpp"
#include "phishpond/ttat/ttat.hpp"

namespace phishpond::persistence {

/// Drives one session through the engine and writes every transition to its
/// log. Transitions are computed before anything is appended, so an illegal
/// move throws without touching the log.
class SessionRecorder {
 public:
  SessionRecorder(const game::GameEngine& engine, ttat::TtatWeights weights, std::string config_hash,
                  EventLog log = {});

  const game::SessionState& start(Mode mode, std::uint64_t seed, std::string session_id = {},
                                  std::string player_id = {});
  game::ActionOutcome act(game::Action a, Millis at);
  game::ActionOutcome ask_teacher();
  void tick(Millis elapsed);
  void advance_level();
  void quit();
  // Appends SessionEnded. Throws SessionStillActive while play can continue.
  const SessionEnded& finish();

  bool started() const { return state_.has_value(); }
  bool ended() const { return ended_.has_value(); }
  const game::SessionState& state() const;
  const std::optional<SessionEnded>& ended_record() const { return ended_; }
  const EventLog& log() const { return log_; }
  const std::string& player_id() const { return player_id_; }

 private:
  void emit(Millis at, EventBody body);
  void present_current();
  void require_open() const;

  const game::GameEngine& engine_;
  ttat::TtatWeights weights_;
  std::string config_hash_;
  EventLog log_;
  std::optional<game::SessionState> state_;
  std::optional<SessionEnded> ended_;
  std::string player_id_;
};

// Constructs for a finished session, or nothing when no decision was made.
std::optional<ttat::TtatConstructs> constructs_for(const game::SessionState& s,
                                                   const game::SessionSummary& summary,
                                                   const game::GameConfig& cfg,
                                                   const ttat::TtatWeights& w);

/// Re-drives the engine from the logged seed and actions and checks every
/// recorded outcome, presentation and the final summary against it.
/// Throws Error(VersionMismatch) when the corpus version or config hash
/// differs from SessionStarted, CorruptLog(seq) at the first event that is
/// missing, out of order, or disagrees with the engine.
game::SessionSummary replay(const std::vector<SessionEvent>& events, const game::GameEngine& engine,
                            const std::string& config_hash, const ttat::TtatWeights& weights);

}  // namespace phishpond::persistence
