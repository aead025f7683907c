#include "phishpond/ttat/ttat.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

#include "phishpond/error.hpp"

namespace phishpond::ttat {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

void TtatWeights::validate() const {
  for (double w : {severity, susceptibility, severity_x_susceptibility, threat, effectiveness,
                   threat_x_effectiveness, self_efficacy, cost}) {
    if (!(w >= 0.0) || !std::isfinite(w))
      throw Error(ErrorCode::InvalidConfig, "TTAT weights must be finite and non-negative");
  }
  if (severity + susceptibility + severity_x_susceptibility > 1.0 + 1e-9)
    throw Error(ErrorCode::InvalidConfig, "threat weights must sum to at most 1");
  if (!(effectiveness_without_hints >= 0.0 && effectiveness_without_hints <= 1.0))
    throw Error(ErrorCode::InvalidConfig, "effectiveness_without_hints must lie in [0, 1]");
}

double perceived_threat(double severity, double susceptibility, const TtatWeights& w) {
  return clamp01(w.severity * severity + w.susceptibility * susceptibility +
                 w.severity_x_susceptibility * severity * susceptibility);
}

double avoidance_motivation(double threat, double effectiveness, double cost, double self_efficacy,
                            const TtatWeights& w) {
  return clamp01(w.threat * threat + w.effectiveness * effectiveness +
                 w.threat_x_effectiveness * threat * effectiveness +
                 w.self_efficacy * self_efficacy - w.cost * cost);
}

TtatConstructs estimate_constructs(const game::SessionSummary& summary,
                                   const std::vector<game::DecisionRecord>& decided,
                                   const game::GameConfig& cfg, const TtatWeights& w) {
  if (decided.empty()) throw Error(ErrorCode::NoDecisions, "no decisions were recorded");

  int phish = 0;
  int phish_missed = 0;
  int hinted = 0;
  int hinted_correct = 0;
  int unhinted_correct = 0;
  double points_lost = 0.0;
  double points_losable = 0.0;
  double hint_points = 0.0;
  std::set<Tier> played{summary.highest_level};

  for (const auto& d : decided) {
    const auto& rules = cfg.level(d.level);
    played.insert(d.level);
    const double wrong_cost = std::abs(rules.points_wrong);
    points_losable += wrong_cost;
    if (!d.correct) points_lost += wrong_cost;
    if (d.truth == Label::Phish) {
      ++phish;
      if (!d.correct) ++phish_missed;
    }
    if (d.hint_used) {
      ++hinted;
      if (d.correct) ++hinted_correct;
      hint_points += std::abs(rules.hint_penalty);
    } else if (d.correct) {
      ++unhinted_correct;
    }
  }
  // Hints spent on a worm that never got decided happened in the final level.
  const int undecided_hints = std::max(0, summary.hints_used - hinted);
  hint_points += undecided_hints * std::abs(cfg.level(summary.highest_level).hint_penalty);

  double reward_budget = 0.0;
  for (Tier t : played) reward_budget += cfg.level(t).points_correct * cfg.level(t).worm_count;

  TtatConstructs c;
  c.perceived_susceptibility = phish == 0 ? 0.0 : static_cast<double>(phish_missed) / phish;
  c.perceived_severity = points_losable == 0.0 ? 0.0 : points_lost / points_losable;
  c.safeguard_effectiveness =
      hinted == 0 ? w.effectiveness_without_hints : static_cast<double>(hinted_correct) / hinted;
  c.safeguard_cost = clamp01(hint_points / reward_budget);
  c.self_efficacy = static_cast<double>(unhinted_correct) / static_cast<double>(decided.size());
  c.perceived_threat = perceived_threat(c.perceived_severity, c.perceived_susceptibility, w);
  c.avoidance_motivation = avoidance_motivation(c.perceived_threat, c.safeguard_effectiveness,
                                                c.safeguard_cost, c.self_efficacy, w);
  return c;
}

game::GameConfig adapt(const TtatConstructs& c, const game::GameConfig& cfg, Tier next) {
  auto levels = cfg.levels();
  const auto first = index_of(next);

  if (c.self_efficacy >= 0.8) {
    auto shortened = levels;
    for (std::size_t i = first; i < shortened.size(); ++i) {
      auto& limit = shortened[i].time_limit;
      limit = Millis{std::llround(static_cast<double>(limit.count()) * 0.9)};
      if (i > 0 && limit >= shortened[i - 1].time_limit)
        limit = shortened[i - 1].time_limit - Millis{1};
    }
    const bool positive = std::all_of(shortened.begin(), shortened.end(),
                                      [](const game::LevelRules& r) { return r.time_limit > Millis{0}; });
    if (positive) levels = shortened;
  }

  if (c.perceived_susceptibility >= 0.5) {
    auto& f = levels[first].phish_fraction;
    f = std::max(f, std::min(0.7, f + 0.1));
  }
  return game::GameConfig(levels, cfg.lives());
}

}  // namespace phishpond::ttat
