#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "phishpond/game/session.hpp"
#include "phishpond/ttat/ttat.hpp"

namespace phishpond::kernels {

// Scripted players for headless runs.
//   perfect        answers from the truth label, never asks the teacher
//   random         coin-flip answers, asks the teacher on ~15% of worms
//   cue-threshold  follows the analyzer verdict, asks the teacher when the
//                  risk is within 0.1 of the threshold
enum class Policy { Perfect, Random, CueThreshold };

std::string_view to_string(Policy p);
std::optional<Policy> parse_policy(std::string_view s);

struct SimOptions {
  int players = 1;
  std::uint64_t seed = 0;
  Policy policy = Policy::Perfect;
  std::optional<Mode> mode;  // alternate url/email by player index when unset
};

struct PlayerRun {
  int player = 0;
  std::uint64_t seed = 0;
  Mode mode = Mode::Url;
  game::SessionSummary summary;
  std::optional<ttat::TtatConstructs> constructs;
  std::vector<Millis> level_time_limits;  // limit of each level entered, in order
  game::SessionState final_state;

  bool operator==(const PlayerRun&) const = default;
};

// Plays one full session. Pure in (engine, options, index).
PlayerRun simulate_player(const game::GameEngine& engine, const ttat::TtatWeights& w,
                          const SimOptions& opts, int index);

std::vector<PlayerRun> simulate(const game::GameEngine& engine, const ttat::TtatWeights& w,
                                const SimOptions& opts);
std::vector<PlayerRun> simulate_serial(const game::GameEngine& engine, const ttat::TtatWeights& w,
                                       const SimOptions& opts);

// Deterministic JSON report (no timings, no thread counts).
nlohmann::json report_json(const SimOptions& opts, const std::vector<PlayerRun>& runs);

}  // namespace phishpond::kernels
