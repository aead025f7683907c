#pragma once

#include <vector>

#include "phishpond/game/config.hpp"
#include "phishpond/game/session.hpp"

namespace phishpond::ttat {

struct TtatConstructs {
  double perceived_severity = 0.0;
  double perceived_susceptibility = 0.0;
  double perceived_threat = 0.0;
  double safeguard_effectiveness = 0.0;
  double safeguard_cost = 0.0;
  double self_efficacy = 0.0;
  double avoidance_motivation = 0.0;

  bool operator==(const TtatConstructs&) const = default;
};

// Coefficients of the two clamped linear-plus-interaction forms. All must be
// non-negative; the cost coefficient is applied with a negative sign.
struct TtatWeights {
  double severity = 0.4;
  double susceptibility = 0.4;
  double severity_x_susceptibility = 0.2;

  double threat = 0.3;
  double effectiveness = 0.25;
  double threat_x_effectiveness = 0.15;
  double self_efficacy = 0.3;
  double cost = 0.25;

  // Effectiveness reported for sessions that never used a hint.
  double effectiveness_without_hints = 1.0;

  // Throws Error(InvalidConfig) on negative coefficients or threat weights
  // summing above 1.
  void validate() const;

  bool operator==(const TtatWeights&) const = default;
};

double clamp01(double v);

double perceived_threat(double severity, double susceptibility, const TtatWeights& w);

double avoidance_motivation(double threat, double effectiveness, double cost, double self_efficacy,
                            const TtatWeights& w);

// Behavioural estimates from play telemetry. Throws Error(NoDecisions) when
// `decided` is empty.
TtatConstructs estimate_constructs(const game::SessionSummary& summary,
                                   const std::vector<game::DecisionRecord>& decided,
                                   const game::GameConfig& cfg, const TtatWeights& w);

// Difficulty adaptation before `next` is played. High self-efficacy shortens
// `next` and every later tier by 10%; high susceptibility raises the phish
// fraction of `next` by 0.1, capped at 0.7.
game::GameConfig adapt(const TtatConstructs& c, const game::GameConfig& cfg, Tier next);

}  // namespace phishpond::ttat
