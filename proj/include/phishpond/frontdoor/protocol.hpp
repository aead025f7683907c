#pragma once

// Message schema v1. Every message is one JSON object with "v": 1 and a
// "type"; docs/formats.md lists the fields of each type.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "phishpond/common.hpp"
#include "phishpond/game/session.hpp"
#include "phishpond/ttat/ttat.hpp"

namespace phishpond::frontdoor {

inline constexpr int kProtocolVersion = 1;
inline constexpr std::string_view kReferenceGuideUrl = "http://education.apwg.org/";

struct StartSession {
  Mode mode = Mode::Url;
  std::string player_id;  // optional; sessions of named players are saved to their profile
  std::string display_name;
  std::optional<std::uint64_t> seed;  // for reproducible play; drawn by the server otherwise
};

enum class PlayerMove { Eat, Reject, Teacher };

struct ActionRequest {
  PlayerMove move = PlayerMove::Eat;
};
struct NextLevel {};
struct QuitRequest {};

using ClientMessage = std::variant<StartSession, ActionRequest, NextLevel, QuitRequest>;

class BadMessage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Throws BadMessage for malformed JSON, unknown types, a "v" other than 1,
// or fields that fail validation. "v" may be omitted by clients.
ClientMessage parse_client_message(std::string_view text);

// Server message builders. All stamp "v" and "type".
nlohmann::json session_started_message(const game::SessionState& s, const game::GameConfig& cfg);
nlohmann::json worm_message(const game::SessionState& s);
nlohmann::json outcome_message(const game::ActionOutcome& o, const game::SessionState& after);
nlohmann::json level_complete_message(const game::SessionState& s);
nlohmann::json level_started_message(const game::SessionState& s, const game::GameConfig& cfg);
nlohmann::json clock_message(const game::SessionState& s);
nlohmann::json summary_message(const game::SessionSummary& summary,
                               const std::optional<ttat::TtatConstructs>& constructs);
nlohmann::json error_message(std::string_view code, std::string_view detail);

}  // namespace phishpond::frontdoor
