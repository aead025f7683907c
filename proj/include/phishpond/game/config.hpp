#pragma once

#include <array>

#include "phishpond/common.hpp"

namespace phishpond::game {

struct LevelRules {
  Millis time_limit{0};
  int worm_count = 0;
  double phish_fraction = 0.0;
  int points_correct = 0;
  int points_wrong = 0;  // <= 0
  int hint_penalty = 0;  // < 0

  bool operator==(const LevelRules&) const = default;
};

// Per-level rules plus the session-wide life budget. The constructor rejects
// any combination that breaks the level contract: time limits strictly
// decreasing from Beginner to Advanced, negative hint penalty, at least one
// life, positive worm counts and phish fractions strictly inside (0, 1).
class GameConfig {
 public:
  GameConfig(std::array<LevelRules, 3> levels, int lives);

  // Values shipped in data/config.json.
  static const GameConfig& defaults();

  const LevelRules& level(Tier t) const { return levels_[index_of(t)]; }
  const std::array<LevelRules, 3>& levels() const { return levels_; }
  int lives() const { return lives_; }

  bool operator==(const GameConfig&) const = default;

 private:
  std::array<LevelRules, 3> levels_;
  int lives_;
};

}  // namespace phishpond::game
