#include "phishpond/kernels/simulate.hpp"

#include "phishpond/codec.hpp"
#include "phishpond/corpus/corpus.hpp"
#include "phishpond/kernels/batch.hpp"
#include "phishpond/persistence/replay.hpp"
#include "phishpond/prng.hpp"

namespace phishpond::kernels {

std::string_view to_string(Policy p) {
  switch (p) {
    case Policy::Perfect: return "perfect";
    case Policy::Random: return "random";
    case Policy::CueThreshold: return "cue-threshold";
  }
  return "perfect";
}

std::optional<Policy> parse_policy(std::string_view s) {
  for (auto p : {Policy::Perfect, Policy::Random, Policy::CueThreshold})
    if (to_string(p) == s) return p;
  return std::nullopt;
}

namespace {

constexpr std::uint64_t kPlayerStream = 0x706c61796572ULL;  // "player"

struct Choice {
  bool ask_teacher = false;
  game::Action action = game::Action::Eat;
  Millis think{0};
};

Choice choose(Policy policy, const corpus::WormSpec& worm, const game::GameEngine& engine,
              Xoshiro256& rng) {
  Choice c;
  switch (policy) {
    case Policy::Perfect:
      c.action = worm.truth == Label::Phish ? game::Action::Reject : game::Action::Eat;
      c.think = Millis{2000};
      break;
    case Policy::Random:
      c.ask_teacher = rng.below(100) < 15;
      c.action = rng.below(2) == 0 ? game::Action::Eat : game::Action::Reject;
      c.think = Millis{1000 + static_cast<std::int64_t>(rng.below(5001))};
      break;
    case Policy::CueThreshold: {
      const auto v = corpus::analyze_worm(worm, engine.analyzer());
      const auto threshold = engine.analyzer().config().threshold;
      c.ask_teacher = v.risk < threshold && v.risk.milli + 100 >= threshold.milli;
      c.action = v.label == Label::Phish ? game::Action::Reject : game::Action::Eat;
      c.think = Millis{3000};
      break;
    }
  }
  return c;
}

}  // namespace

PlayerRun simulate_player(const game::GameEngine& engine, const ttat::TtatWeights& w,
                          const SimOptions& opts, int index) {
  PlayerRun run;
  run.player = index;
  run.seed = derive_seed(opts.seed, kPlayerStream + static_cast<std::uint64_t>(index));
  run.mode = opts.mode ? *opts.mode : (index % 2 == 0 ? Mode::Url : Mode::Email);

  Xoshiro256 rng(derive_seed(run.seed, 0));
  auto s = engine.new_session(run.mode, run.seed, "sim-" + std::to_string(index));
  run.level_time_limits.push_back(engine.config().level(s.level).time_limit);

  while (true) {
    if (s.phase == game::Phase::InLevel) {
      const auto c = choose(opts.policy, *s.current, engine, rng);
      s = engine.tick(std::move(s), c.think);
      if (s.phase != game::Phase::InLevel) continue;
      if (c.ask_teacher) s = engine.ask_teacher(std::move(s)).state;
      const Millis at = s.elapsed;
      s = engine.apply_action(std::move(s), c.action, at).state;
    } else if (s.phase == game::Phase::LevelComplete && next_tier(s.level)) {
      s = engine.advance_level(std::move(s));
      run.level_time_limits.push_back(engine.config().level(s.level).time_limit);
    } else {
      break;
    }
  }
  run.summary = engine.finish_session(s);
  run.constructs = persistence::constructs_for(s, run.summary, engine.config(), w);
  run.final_state = std::move(s);
  return run;
}

std::vector<PlayerRun> simulate(const game::GameEngine& engine, const ttat::TtatWeights& w,
                                const SimOptions& opts) {
  return map_indices_parallel(static_cast<std::size_t>(opts.players), [&](std::size_t i) {
    return simulate_player(engine, w, opts, static_cast<int>(i));
  });
}

std::vector<PlayerRun> simulate_serial(const game::GameEngine& engine, const ttat::TtatWeights& w,
                                       const SimOptions& opts) {
  return map_indices_serial(static_cast<std::size_t>(opts.players), [&](std::size_t i) {
    return simulate_player(engine, w, opts, static_cast<int>(i));
  });
}

nlohmann::json report_json(const SimOptions& opts, const std::vector<PlayerRun>& runs) {
  using nlohmann::json;
  json players = json::array();
  std::map<std::string, int> outcomes;
  double accuracy_sum = 0.0;
  long long score_sum = 0;
  for (const auto& r : runs) {
    json limits = json::array();
    for (const auto& t : r.level_time_limits) limits.push_back(t.count());
    players.push_back({{"player", r.player},
                       {"seed", std::to_string(r.seed)},
                       {"mode", to_string(r.mode)},
                       {"summary", codec::to_json(r.summary)},
                       {"constructs", r.constructs ? codec::to_json(*r.constructs) : json(nullptr)},
                       {"level_time_limits_ms", limits}});
    ++outcomes[std::string(game::to_string(r.summary.outcome))];
    accuracy_sum += r.summary.accuracy;
    score_sum += r.summary.final_score;
  }
  const double n = runs.empty() ? 1.0 : static_cast<double>(runs.size());
  return {{"policy", to_string(opts.policy)},
          {"seed", std::to_string(opts.seed)},
          {"players", opts.players},
          {"mode", opts.mode ? json(to_string(*opts.mode)) : json("alternating")},
          {"outcomes", outcomes},
          {"mean_accuracy", accuracy_sum / n},
          {"mean_score", static_cast<double>(score_sum) / n},
          {"results", players}};
}

}  // namespace phishpond::kernels
