#include "fuzz.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "phishpond/error.hpp"
#include "phishpond/prng.hpp"

namespace oracle {

using namespace phishpond;
using game::Phase;

Script random_script(std::uint64_t seed, std::size_t max_len) {
  Xoshiro256 rng(seed);
  const auto len = 1 + rng.below(max_len);
  Script s;
  for (std::size_t i = 0; i < len; ++i) {
    const auto r = rng.below(1000);
    Op op;
    if (r < 300) op.kind = OpKind::Eat;
    else if (r < 600) op.kind = OpKind::Reject;
    else if (r < 680) op.kind = OpKind::Teacher;
    else if (r < 840) op.kind = OpKind::Tick;
    else if (r < 940) op.kind = OpKind::Advance;
    else if (r < 955) op.kind = OpKind::Quit;
    else op.kind = OpKind::Finish;

    if (op.kind == OpKind::Tick) {
      const auto t = rng.below(100);
      op.ms = t < 2 ? -1 : t < 10 ? 0 : static_cast<std::int64_t>(rng.below(20000));
    } else if (op.kind == OpKind::Eat || op.kind == OpKind::Reject) {
      const auto t = rng.below(100);
      op.ms = t < 3   ? -1 - static_cast<std::int64_t>(rng.below(500))
              : t < 6 ? 200000 + static_cast<std::int64_t>(rng.below(10000))
                      : static_cast<std::int64_t>(rng.below(6000));
    }
    s.push_back(op);
  }
  return s;
}

Script guided_script(const game::GameEngine& engine, Mode mode, std::uint64_t seed, std::size_t max_len,
                     double accuracy) {
  Xoshiro256 rng(derive_seed(seed, 1));
  // Transitions take a copy: a throwing move must leave the walk's state intact.
  auto s = engine.new_session(mode, seed);
  Script out;
  for (auto op : random_script(seed, max_len)) {
    if (op.kind == OpKind::Quit && rng.below(10) != 0) op = Op{OpKind::Tick, 0};
    if ((op.kind == OpKind::Eat || op.kind == OpKind::Reject) && s.current) {
      const bool right = rng.unit() < accuracy;
      const bool phish = s.current->truth == Label::Phish;
      op.kind = (phish == right) ? OpKind::Reject : OpKind::Eat;
    }
    out.push_back(op);
    try {
      switch (op.kind) {
        case OpKind::Eat:
        case OpKind::Reject: {
          const auto at = s.presented_at + Millis{op.ms};
          s = engine.apply_action(s, op.kind == OpKind::Eat ? game::Action::Eat : game::Action::Reject, at)
                  .state;
          break;
        }
        case OpKind::Teacher: s = engine.ask_teacher(s).state; break;
        case OpKind::Tick: s = engine.tick(s, Millis{op.ms}); break;
        case OpKind::Advance: s = engine.advance_level(s); break;
        case OpKind::Quit: s = engine.quit(s); break;
        case OpKind::Finish: engine.finish_session(s); break;
      }
    } catch (const Error&) {
    }
    if (s.phase == game::Phase::LevelComplete && next_tier(s.level) && rng.below(10) < 9) {
      out.push_back(Op{OpKind::Advance, 0});
      s = engine.advance_level(std::move(s));
    }
  }
  return out;
}

game::GameConfig short_levels_config() {
  const auto& d = game::GameConfig::defaults();
  auto levels = d.levels();
  const int counts[3] = {3, 4, 5};
  const int limits_s[3] = {30, 20, 12};
  for (std::size_t i = 0; i < 3; ++i) {
    levels[i].worm_count = counts[i];
    levels[i].time_limit = Millis{limits_s[i] * 1000};
  }
  return game::GameConfig(levels, 2);
}

namespace {

// What the rules say a session looks like, tracked without the engine.
struct Shadow {
  Phase phase = Phase::InLevel;
  Tier level = Tier::Beginner;
  std::vector<std::string> ids;
  std::size_t pos = 0;
  int lives = 0;
  int score = 0;
  bool hinted = false;
  int hints = 0;
  Millis clock{0};
  Millis elapsed{0};
  Millis level_start{0};
  Millis presented{0};
  bool timed_out = false;
  bool completed_all = false;
  std::map<Tier, int> level_scores;
  int decisions = 0, correct = 0, phish_decided = 0, phish_missed = 0, legit_rejected = 0;
  std::map<Tier, std::pair<int, int>> per_level;
};

bool terminal(Phase p) { return p == Phase::GameOver || p == Phase::Finished; }

class Checker {
 public:
  Checker(const game::GameEngine& e, Mode mode) : e_(e), mode_(mode) {
    for (const auto& w : e.corpus().worms) truth_.emplace(w.id, &w);
  }

  void violation(std::size_t step, const std::string& what) {
    std::ostringstream os;
    os << "step " << step << ": " << what;
    report.violations.push_back(os.str());
  }

  // Checks a freshly loaded level against the level contract and adopts its
  // order into the shadow.
  void adopt_level(std::size_t step, const game::SessionState& s, Tier tier) {
    const auto& r = e_.config().level(tier);
    sh.level = tier;
    sh.ids = s.level_worm_ids;
    sh.pos = 0;
    sh.clock = r.time_limit;
    sh.level_start = sh.elapsed;
    sh.presented = sh.elapsed;
    sh.hinted = false;
    sh.phase = Phase::InLevel;
    sh.level_scores.emplace(tier, 0);
    if (static_cast<int>(sh.ids.size()) != r.worm_count) violation(step, "level size differs from worm_count");
    std::set<std::string> uniq(sh.ids.begin(), sh.ids.end());
    if (uniq.size() != sh.ids.size()) violation(step, "level repeats a worm");
    int phish = 0;
    for (const auto& id : sh.ids) {
      const auto it = truth_.find(id);
      if (it == truth_.end()) {
        violation(step, "level worm " + id + " is not in the corpus");
        continue;
      }
      if (it->second->tier != tier || it->second->mode != mode_)
        violation(step, "level worm " + id + " has the wrong tier or mode");
      phish += it->second->truth == Label::Phish;
    }
    const int want = static_cast<int>(std::lround(r.worm_count * r.phish_fraction));
    if (phish != want) violation(step, "phish count " + std::to_string(phish) + " != " + std::to_string(want));
  }

  void compare(std::size_t step, const game::SessionState& s) {
    const auto limit = e_.config().level(s.level).time_limit;
    if (s.score < 0) violation(step, "negative score");
    if (s.lives_remaining < 0 || s.lives_remaining > e_.config().lives()) violation(step, "lives out of range");
    const bool over = s.lives_remaining == 0 || s.timed_out;
    if ((s.phase == Phase::GameOver) != over) violation(step, "GameOver does not match lives/timeout");
    if (s.timed_out && s.clock_remaining != Millis{0}) violation(step, "timed out with clock left");
    if (s.clock_remaining < Millis{0} || s.clock_remaining > limit) violation(step, "clock out of range");
    if (s.elapsed - s.level_started_at + s.clock_remaining != limit) violation(step, "clock not conserved");

    // Partition: decided-in-level, then current, then pending, in level order.
    std::vector<std::string> seen;
    for (const auto& d : s.decided)
      if (d.level == s.level) seen.push_back(d.worm_id);
    if (s.current) seen.push_back(s.current->id);
    for (const auto& w : s.pending) seen.push_back(w.id);
    if (seen != s.level_worm_ids) violation(step, "level worms are not partitioned");
    if (s.phase == Phase::InLevel && !s.current) violation(step, "in level without a current worm");
    if (s.phase == Phase::LevelComplete && (s.current || !s.pending.empty()))
      violation(step, "level complete with worms left");

    if (s.phase != sh.phase) violation(step, "phase " + std::string(game::to_string(s.phase)) + " expected " +
                                                 std::string(game::to_string(sh.phase)));
    if (s.level != sh.level) violation(step, "level differs");
    if (s.score != sh.score) violation(step, "score " + std::to_string(s.score) + " expected " + std::to_string(sh.score));
    if (s.lives_remaining != sh.lives) violation(step, "lives differ");
    if (s.current_hinted != sh.hinted) violation(step, "hinted flag differs");
    if (s.hints_used != sh.hints) violation(step, "hint count differs");
    if (s.clock_remaining != sh.clock) violation(step, "clock differs");
    if (s.elapsed != sh.elapsed) violation(step, "elapsed differs");
    if (s.timed_out != sh.timed_out) violation(step, "timed_out differs");
    if (s.level_scores != sh.level_scores) violation(step, "level scores differ");
    if (static_cast<int>(s.decided.size()) != sh.decisions) violation(step, "decision count differs");
    if (sh.phase == Phase::InLevel) {
      if (!s.current || sh.pos >= sh.ids.size() || s.current->id != sh.ids[sh.pos])
        violation(step, "current worm out of order");
      else if (s.presented_at != sh.presented)
        violation(step, "presented_at differs");
    }
  }

  template <typename Fn>
  bool expect_error(std::size_t step, const char* what, std::optional<ErrorCode> want, Fn&& fn) {
    try {
      fn();
    } catch (const Error& err) {
      if (!want) violation(step, std::string(what) + " raised " + std::string(to_string(err.code())));
      else if (err.code() != *want)
        violation(step, std::string(what) + " raised " + std::string(to_string(err.code())) + " expected " +
                            std::string(to_string(*want)));
      return false;
    }
    if (want) violation(step, std::string(what) + " should raise " + std::string(to_string(*want)));
    return true;
  }

  void apply(std::size_t step, game::SessionState& s, const Op& op) {
    const auto& r = e_.config().level(sh.level);
    switch (op.kind) {
      case OpKind::Eat:
      case OpKind::Reject: {
        const auto action = op.kind == OpKind::Eat ? game::Action::Eat : game::Action::Reject;
        const Millis at = sh.presented + Millis{op.ms};
        std::optional<ErrorCode> want;
        if (sh.phase != Phase::InLevel) want = ErrorCode::SessionNotActive;
        else if (at < sh.presented || at > sh.level_start + r.time_limit) want = ErrorCode::InvalidTimestamp;
        std::optional<game::Step> st;
        if (!expect_error(step, "action", want, [&] { st = e_.apply_action(s, action, at); })) return;
        if (want) return;
        const auto* worm = truth_.at(sh.ids[sh.pos]);
        const bool ok = (action == game::Action::Eat) == (worm->truth == Label::Legit);
        const int before = sh.score;
        sh.score = std::max(0, sh.score + (ok ? r.points_correct : r.points_wrong));
        sh.level_scores[sh.level] += sh.score - before;
        if (!ok) --sh.lives;
        ++sh.decisions;
        auto& [lc, lt] = sh.per_level[sh.level];
        ++lt;
        if (ok) { ++sh.correct; ++lc; }
        if (worm->truth == Label::Phish) {
          ++sh.phish_decided;
          if (!ok) ++sh.phish_missed;
        } else if (!ok) {
          ++sh.legit_rejected;
        }
        const auto& out = st->outcome;
        if (out.correct != ok) violation(step, "outcome.correct wrong");
        if (out.score_delta != sh.score - before) violation(step, "score_delta wrong");
        if (out.life_delta != (ok ? 0 : -1)) violation(step, "life_delta wrong");
        if (out.tip) violation(step, "action outcome carries a tip");
        if (ok && out.feedback_text != game::kWellDone) violation(step, "feedback for a correct move");
        if (!ok) {
          const auto& tip = e_.tip_for_worm(worm->id).text;
          const auto& f = out.feedback_text;
          if (f.size() < tip.size() || f.compare(f.size() - tip.size(), tip.size(), tip) != 0)
            violation(step, "wrong-move feedback lacks the worm's tip");
        }
        const auto& d = st->state.decided.back();
        if (d.worm_id != worm->id || d.correct != ok || d.hint_used != sh.hinted ||
            d.decision_time != at - sh.presented || d.level != sh.level)
          violation(step, "decision record wrong");
        ++sh.pos;
        sh.hinted = false;
        if (sh.lives == 0) {
          sh.phase = Phase::GameOver;
        } else if (sh.pos == sh.ids.size()) {
          sh.phase = Phase::LevelComplete;
          if (sh.level == Tier::Advanced) sh.completed_all = true;
        } else {
          sh.presented = at;
        }
        s = std::move(st->state);
        return;
      }
      case OpKind::Teacher: {
        std::optional<ErrorCode> want;
        if (sh.phase != Phase::InLevel) want = ErrorCode::SessionNotActive;
        else if (sh.hinted) want = ErrorCode::AlreadyHinted;
        std::optional<game::Step> st;
        if (!expect_error(step, "teacher", want, [&] { st = e_.ask_teacher(s); }) || want) return;
        const int before = sh.score;
        sh.score = std::max(0, sh.score + r.hint_penalty);
        sh.level_scores[sh.level] += sh.score - before;
        sh.hinted = true;
        ++sh.hints;
        if (!st->outcome.tip || st->outcome.correct || st->outcome.life_delta != 0 ||
            st->outcome.score_delta != sh.score - before)
          violation(step, "teacher outcome wrong");
        else if (st->outcome.tip->text != e_.tip_for_worm(sh.ids[sh.pos]).text)
          violation(step, "teacher tip is not the worm's tip");
        s = std::move(st->state);
        return;
      }
      case OpKind::Tick: {
        std::optional<ErrorCode> want;
        if (op.ms < 0) want = ErrorCode::InvalidTimestamp;
        game::SessionState next;
        if (!expect_error(step, "tick", want, [&] { next = e_.tick(s, Millis{op.ms}); }) || want) return;
        if (sh.phase == Phase::InLevel) {
          const Millis d = std::min(Millis{op.ms}, sh.clock);
          sh.clock -= d;
          sh.elapsed += d;
          if (sh.clock == Millis{0}) {
            sh.phase = Phase::GameOver;
            sh.timed_out = true;
          }
        } else if (!(next == s)) {
          violation(step, "tick changed a session outside a level");
        }
        s = std::move(next);
        return;
      }
      case OpKind::Advance: {
        std::optional<ErrorCode> want;
        if (terminal(sh.phase)) want = ErrorCode::SessionNotActive;
        else if (sh.phase != Phase::LevelComplete) want = ErrorCode::NotComplete;
        else if (sh.level == Tier::Advanced) want = ErrorCode::AlreadyAtTop;
        game::SessionState next;
        if (!expect_error(step, "advance", want, [&] { next = e_.advance_level(s); }) || want) return;
        adopt_level(step, next, *next_tier(sh.level));
        s = std::move(next);
        return;
      }
      case OpKind::Quit: {
        std::optional<ErrorCode> want;
        if (terminal(sh.phase)) want = ErrorCode::SessionNotActive;
        game::SessionState next;
        if (!expect_error(step, "quit", want, [&] { next = e_.quit(s); }) || want) return;
        sh.phase = Phase::Finished;
        s = std::move(next);
        return;
      }
      case OpKind::Finish: {
        const bool done = terminal(sh.phase) || (sh.phase == Phase::LevelComplete && sh.level == Tier::Advanced);
        std::optional<ErrorCode> want;
        if (!done) want = ErrorCode::SessionStillActive;
        game::SessionSummary sum;
        if (!expect_error(step, "finish", want, [&] { sum = e_.finish_session(s); }) || want) return;
        check_summary(step, sum);
        return;
      }
    }
  }

  void check_summary(std::size_t step, const game::SessionSummary& sum) {
    const auto outcome = sh.phase == Phase::GameOver ? game::SessionOutcome::GameOver
                         : sh.completed_all           ? game::SessionOutcome::Completed
                                                      : game::SessionOutcome::Quit;
    if (sum.outcome != outcome) violation(step, "summary outcome wrong");
    if (sum.final_score != sh.score || sum.decisions != sh.decisions || sum.correct != sh.correct ||
        sum.hints_used != sh.hints || sum.phish_decided != sh.phish_decided ||
        sum.phish_missed != sh.phish_missed || sum.legit_rejected != sh.legit_rejected)
      violation(step, "summary counters wrong");
    const double acc = sh.decisions == 0 ? 0.0 : static_cast<double>(sh.correct) / sh.decisions;
    if (sum.accuracy != acc || sum.accuracy < 0.0 || sum.accuracy > 1.0) violation(step, "summary accuracy wrong");
    for (const auto& [tier, c] : sh.per_level) {
      const auto it = sum.level_accuracy.find(tier);
      if (it == sum.level_accuracy.end() || it->second != static_cast<double>(c.first) / c.second)
        violation(step, "level accuracy wrong");
    }
    if (sum.level_accuracy.size() != sh.per_level.size()) violation(step, "level accuracy has extra tiers");
    if (sum.level_scores != sh.level_scores) violation(step, "summary level scores wrong");
    if (sum.highest_level != sh.level || sum.duration != sh.elapsed || sum.timed_out != sh.timed_out)
      violation(step, "summary progress fields wrong");
  }

  Shadow sh;
  FuzzReport report;

 private:
  const game::GameEngine& e_;
  Mode mode_;
  std::map<std::string, const corpus::WormSpec*> truth_;
};

}  // namespace

FuzzReport check_script(const game::GameEngine& engine, Mode mode, std::uint64_t seed, const Script& script) {
  Checker c(engine, mode);
  auto s = engine.new_session(mode, seed);
  c.sh.lives = engine.config().lives();
  c.adopt_level(0, s, Tier::Beginner);
  if (s.lives_remaining != engine.config().lives() || s.score != 0 || s.phase != Phase::InLevel)
    c.violation(0, "new session is not at the start state");
  c.compare(0, s);
  for (std::size_t i = 0; i < script.size(); ++i) {
    c.apply(i + 1, s, script[i]);
    c.compare(i + 1, s);
    ++c.report.steps;
    if (c.report.violations.size() > 20) break;
  }
  c.report.final_state = std::move(s);
  return std::move(c.report);
}

}  // namespace oracle
