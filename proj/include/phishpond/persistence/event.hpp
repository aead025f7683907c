#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "phishpond/common.hpp"
#include "phishpond/game/session.hpp"
#include "phishpond/ttat/ttat.hpp"

namespace phishpond::persistence {

enum class LoggedAction { Eat, Reject, Teacher, Quit };

std::string_view to_string(LoggedAction a);
std::optional<LoggedAction> parse_logged_action(std::string_view s);

struct SessionStarted {
  std::string session_id;
  std::string player_id;  // empty for anonymous play
  std::uint64_t seed = 0;
  std::string config_hash;
  std::string corpus_version;
  Mode mode = Mode::Url;

  bool operator==(const SessionStarted&) const = default;
};

struct WormPresented {
  std::string worm_id;
  bool operator==(const WormPresented&) const = default;
};

struct ActionTaken {
  LoggedAction action = LoggedAction::Eat;
  bool operator==(const ActionTaken&) const = default;
};

struct OutcomeEmitted {
  game::ActionOutcome outcome;
  bool operator==(const OutcomeEmitted&) const = default;
};

struct Ticked {
  Millis elapsed{0};
  bool operator==(const Ticked&) const = default;
};

struct LevelAdvanced {
  Tier level = Tier::Beginner;
  bool operator==(const LevelAdvanced&) const = default;
};

struct SessionEnded {
  game::SessionSummary summary;
  std::optional<ttat::TtatConstructs> constructs;  // absent when nothing was decided
  bool operator==(const SessionEnded&) const = default;
};

using EventBody = std::variant<SessionStarted, WormPresented, ActionTaken, OutcomeEmitted, Ticked,
                               LevelAdvanced, SessionEnded>;

// `at` is session time: the session clock for most events, the decision time
// supplied by the caller for ActionTaken.
struct SessionEvent {
  std::uint64_t seq = 0;
  Millis at{0};
  EventBody body;

  bool operator==(const SessionEvent&) const = default;
};

std::string_view kind_name(const EventBody& body);

nlohmann::json to_json(const SessionEvent& e);
// Throws codec::CodecError.
SessionEvent event_from_json(const nlohmann::json& j);

// One line of a session log, without the trailing newline.
std::string to_jsonl(const SessionEvent& e);

// Throws CorruptLog(seq) naming the first unreadable line (by the seq it
// should have carried).
std::vector<SessionEvent> parse_log(std::string_view text);

}  // namespace phishpond::persistence
