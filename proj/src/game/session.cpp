#include "phishpond/game/session.hpp"

#include <algorithm>
#include <cstdio>

#include "phishpond/error.hpp"
#include "phishpond/kernels/batch.hpp"
#include "phishpond/prng.hpp"

namespace phishpond::game {

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::InLevel: return "in_level";
    case Phase::LevelComplete: return "level_complete";
    case Phase::GameOver: return "game_over";
    case Phase::Finished: return "finished";
  }
  return "in_level";
}

std::string_view to_string(Action a) { return a == Action::Eat ? "eat" : "reject"; }

std::string_view to_string(SessionOutcome o) {
  switch (o) {
    case SessionOutcome::Completed: return "completed";
    case SessionOutcome::GameOver: return "game_over";
    case SessionOutcome::Quit: return "quit";
  }
  return "quit";
}

namespace {

bool is_terminal(Phase p) { return p == Phase::GameOver || p == Phase::Finished; }

void require_in_level(const SessionState& s) {
  if (s.phase != Phase::InLevel)
    throw Error(ErrorCode::SessionNotActive,
                "session is " + std::string(to_string(s.phase)) + ", not in a level");
  if (!s.current) throw Error(ErrorCode::NoCurrentWorm, "no worm is waiting for a decision");
}

std::string default_session_id(std::uint64_t seed) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "s-%016llx", static_cast<unsigned long long>(seed));
  return buf;
}

}  // namespace

GameEngine::GameEngine(GameConfig config, const corpus::Corpus& corpus,
                       const analyzer::Analyzer& analyzer)
    : config_(std::move(config)), corpus_(corpus), analyzer_(analyzer) {
  const auto verdicts = kernels::analyze_worms(corpus_.worms, analyzer_);
  for (std::size_t i = 0; i < corpus_.worms.size(); ++i) {
    const auto& w = corpus_.worms[i];
    auto tip = analyzer::tip_for(verdicts[i].cues);
    if (w.tip_override) tip.text = *w.tip_override;
    tips_.emplace(w.id, std::move(tip));
  }
}

const analyzer::TeacherTip& GameEngine::tip_for_worm(const std::string& worm_id) const {
  const auto it = tips_.find(worm_id);
  if (it == tips_.end()) throw Error(ErrorCode::NotFound, "worm " + worm_id + " is not in the corpus");
  return it->second;
}

corpus::LevelPlan GameEngine::plan_for(Mode mode, Tier tier, std::uint64_t session_seed) const {
  const auto& r = config_.level(tier);
  return corpus::LevelPlan{tier,         mode, r.worm_count, r.phish_fraction, r.time_limit,
                           derive_seed(session_seed, index_of(tier) + 1)};
}

void GameEngine::load_level(SessionState& s, Tier tier) const {
  auto set = corpus::generate_level_set(corpus_, plan_for(s.mode, tier, s.seed));
  s.level = tier;
  s.clock_remaining = config_.level(tier).time_limit;
  s.level_started_at = s.elapsed;
  s.presented_at = s.elapsed;
  s.level_worm_ids.clear();
  for (const auto& w : set) s.level_worm_ids.push_back(w.id);
  s.pending.assign(std::make_move_iterator(set.begin() + 1), std::make_move_iterator(set.end()));
  s.current = std::move(set.front());
  s.current_hinted = false;
  s.level_scores.emplace(tier, 0);
  s.phase = Phase::InLevel;
}

SessionState GameEngine::new_session(Mode mode, std::uint64_t seed, std::string session_id) const {
  SessionState s;
  s.session_id = session_id.empty() ? default_session_id(seed) : std::move(session_id);
  s.mode = mode;
  s.seed = seed;
  s.lives_remaining = config_.lives();
  load_level(s, Tier::Beginner);
  return s;
}

Step GameEngine::apply_action(SessionState s, Action a, Millis at) const {
  require_in_level(s);
  const auto& rules = config_.level(s.level);
  if (at < s.presented_at || at > s.level_started_at + rules.time_limit)
    throw Error(ErrorCode::InvalidTimestamp, "decision time outside the current worm's window");

  const corpus::WormSpec worm = std::move(*s.current);
  s.current.reset();
  const bool correct = (a == Action::Eat && worm.truth == Label::Legit) ||
                       (a == Action::Reject && worm.truth == Label::Phish);

  ActionOutcome out;
  out.correct = correct;
  const int before = s.score;
  s.score = std::max(0, s.score + (correct ? rules.points_correct : rules.points_wrong));
  out.score_delta = s.score - before;
  s.level_scores[s.level] += out.score_delta;
  if (correct) {
    out.feedback_text = std::string(kWellDone);
  } else {
    out.life_delta = -1;
    s.lives_remaining = std::max(0, s.lives_remaining - 1);
    const auto& tip = tip_for_worm(worm.id);
    out.feedback_text = (worm.truth == Label::Phish ? "Oops, that worm was a fake! "
                                                    : "That worm was real, it was safe to eat. ") +
                        tip.text;
  }

  s.decided.push_back(DecisionRecord{worm.id, s.level, a, worm.truth, correct, s.current_hinted,
                                     at - s.presented_at});
  s.current_hinted = false;

  if (s.lives_remaining == 0) {
    s.phase = Phase::GameOver;
  } else if (s.pending.empty()) {
    s.phase = Phase::LevelComplete;
    if (s.level == Tier::Advanced) s.completed_all = true;
  } else {
    s.current = std::move(s.pending.front());
    s.pending.pop_front();
    s.presented_at = at;
  }
  return Step{std::move(s), std::move(out)};
}

Step GameEngine::ask_teacher(SessionState s) const {
  require_in_level(s);
  if (s.current_hinted)
    throw Error(ErrorCode::AlreadyHinted, "the teacher already helped with worm " + s.current->id);
  const auto& rules = config_.level(s.level);
  const int before = s.score;
  s.score = std::max(0, s.score + rules.hint_penalty);

  ActionOutcome out;
  out.score_delta = s.score - before;
  out.tip = tip_for_worm(s.current->id);
  out.feedback_text = "The teacher says: " + out.tip->text;
  s.level_scores[s.level] += out.score_delta;
  s.current_hinted = true;
  ++s.hints_used;
  return Step{std::move(s), std::move(out)};
}

SessionState GameEngine::tick(SessionState s, Millis elapsed) const {
  if (elapsed < Millis{0}) throw Error(ErrorCode::InvalidTimestamp, "negative tick");
  if (s.phase != Phase::InLevel) return s;
  const Millis step = std::min(elapsed, s.clock_remaining);
  s.clock_remaining -= step;
  s.elapsed += step;
  if (s.clock_remaining == Millis{0}) {
    s.phase = Phase::GameOver;
    s.timed_out = true;
  }
  return s;
}

SessionState GameEngine::advance_level(SessionState s) const {
  if (is_terminal(s.phase)) throw Error(ErrorCode::SessionNotActive, "session has ended");
  if (s.phase != Phase::LevelComplete)
    throw Error(ErrorCode::NotComplete, "worms are still waiting in this level");
  const auto next = next_tier(s.level);
  if (!next) throw Error(ErrorCode::AlreadyAtTop, "advanced is the last level");
  load_level(s, *next);
  return s;
}

SessionState GameEngine::quit(SessionState s) const {
  if (is_terminal(s.phase)) throw Error(ErrorCode::SessionNotActive, "session has ended");
  s.phase = Phase::Finished;
  return s;
}

SessionSummary GameEngine::finish_session(const SessionState& s) const {
  const bool done = is_terminal(s.phase) ||
                    (s.phase == Phase::LevelComplete && s.level == Tier::Advanced);
  if (!done) throw Error(ErrorCode::SessionStillActive, "session is still in play");

  SessionSummary sum;
  sum.session_id = s.session_id;
  sum.mode = s.mode;
  sum.final_score = s.score;
  sum.hints_used = s.hints_used;
  sum.level_scores = s.level_scores;
  sum.highest_level = s.level;
  sum.duration = s.elapsed;
  sum.timed_out = s.timed_out;
  sum.outcome = s.phase == Phase::GameOver ? SessionOutcome::GameOver
                : s.completed_all          ? SessionOutcome::Completed
                                           : SessionOutcome::Quit;

  std::map<Tier, std::pair<int, int>> per_level;  // correct, total
  for (const auto& d : s.decided) {
    ++sum.decisions;
    auto& [ok, total] = per_level[d.level];
    ++total;
    if (d.correct) {
      ++sum.correct;
      ++ok;
    }
    if (d.truth == Label::Phish) {
      ++sum.phish_decided;
      if (!d.correct) ++sum.phish_missed;
    } else if (!d.correct) {
      ++sum.legit_rejected;
    }
  }
  sum.accuracy = sum.decisions == 0 ? 0.0 : static_cast<double>(sum.correct) / sum.decisions;
  for (const auto& [tier, counts] : per_level)
    sum.level_accuracy[tier] = static_cast<double>(counts.first) / counts.second;
  return sum;
}

}  // namespace phishpond::game
