#include "phishpond/game/config.hpp"

#include <string>

#include "phishpond/config_io.hpp"
#include "phishpond/error.hpp"

namespace phishpond::game {

namespace {

[[noreturn]] void reject(Tier t, const std::string& why) {
  throw Error(ErrorCode::InvalidConfig, std::string(to_string(t)) + ": " + why);
}

}  // namespace

GameConfig::GameConfig(std::array<LevelRules, 3> levels, int lives)
    : levels_(levels), lives_(lives) {
  if (lives_ < 1) throw Error(ErrorCode::InvalidConfig, "lives must be at least 1");
  for (Tier t : kTiers) {
    const auto& r = levels_[index_of(t)];
    if (r.time_limit <= Millis{0}) reject(t, "time_limit must be positive");
    if (r.worm_count < 1) reject(t, "worm_count must be positive");
    if (!(r.phish_fraction > 0.0 && r.phish_fraction < 1.0))
      reject(t, "phish_fraction must lie strictly between 0 and 1");
    if (r.points_correct <= 0) reject(t, "points_correct must be positive");
    if (r.points_wrong > 0) reject(t, "points_wrong must not be positive");
    if (r.hint_penalty >= 0) reject(t, "hint_penalty must be negative");
  }
  for (std::size_t i = 1; i < levels_.size(); ++i) {
    if (!(levels_[i].time_limit < levels_[i - 1].time_limit))
      reject(kTiers[i], "time limits must strictly decrease from beginner to advanced");
  }
}

const GameConfig& GameConfig::defaults() {
  static const GameConfig kDefaults = load_ruleset_embedded().game;
  return kDefaults;
}

}  // namespace phishpond::game
