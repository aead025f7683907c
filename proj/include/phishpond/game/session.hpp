#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "phishpond/analyzer/analyzer.hpp"
#include "phishpond/common.hpp"
#include "phishpond/corpus/corpus.hpp"
#include "phishpond/game/config.hpp"

namespace phishpond::game {

enum class Phase { InLevel, LevelComplete, GameOver, Finished };
enum class Action { Eat, Reject };
enum class SessionOutcome { Completed, GameOver, Quit };

std::string_view to_string(Phase p);
std::string_view to_string(Action a);
std::string_view to_string(SessionOutcome o);

struct DecisionRecord {
  std::string worm_id;
  Tier level = Tier::Beginner;
  Action action = Action::Eat;
  Label truth = Label::Legit;
  bool correct = false;
  bool hint_used = false;
  Millis decision_time{0};

  bool operator==(const DecisionRecord&) const = default;
};

// Live game. Held by value: every transition takes a state and returns the
// successor, so a session serializes through its single owner and can be
// copied between threads or compared after replay.
struct SessionState {
  std::string session_id;
  Mode mode = Mode::Url;
  std::uint64_t seed = 0;
  Tier level = Tier::Beginner;
  int score = 0;
  int lives_remaining = 0;
  Millis clock_remaining{0};
  Millis elapsed{0};  // session clock, advanced only by tick
  Millis level_started_at{0};
  Millis presented_at{0};
  std::vector<std::string> level_worm_ids;
  std::deque<corpus::WormSpec> pending;
  std::optional<corpus::WormSpec> current;
  bool current_hinted = false;
  std::vector<DecisionRecord> decided;
  int hints_used = 0;
  std::map<Tier, int> level_scores;
  Phase phase = Phase::InLevel;
  bool timed_out = false;
  bool completed_all = false;

  bool operator==(const SessionState&) const = default;
};

struct ActionOutcome {
  std::string feedback_text;
  int score_delta = 0;  // change actually applied (after the zero floor)
  int life_delta = 0;
  std::optional<bool> correct;              // Eat/Reject only
  std::optional<analyzer::TeacherTip> tip;  // AskTeacher only

  bool operator==(const ActionOutcome&) const = default;
};

struct SessionSummary {
  std::string session_id;
  Mode mode = Mode::Url;
  int final_score = 0;
  double accuracy = 0.0;
  std::map<Tier, double> level_accuracy;
  std::map<Tier, int> level_scores;
  int decisions = 0;
  int correct = 0;
  int hints_used = 0;
  int phish_decided = 0;
  int phish_missed = 0;
  int legit_rejected = 0;
  Tier highest_level = Tier::Beginner;
  Millis duration{0};
  SessionOutcome outcome = SessionOutcome::Quit;
  bool timed_out = false;

  bool operator==(const SessionSummary&) const = default;
};

struct Step {
  SessionState state;
  ActionOutcome outcome;
};

inline constexpr std::string_view kWellDone = "WOW well done!";

/// Rules of play over an immutable corpus. Transitions never mutate their
/// input and throw phishpond::Error on illegal moves:
///   apply_action  SessionNotActive, NoCurrentWorm, InvalidTimestamp
///   ask_teacher   SessionNotActive, NoCurrentWorm, AlreadyHinted
///   advance_level SessionNotActive, NotComplete, AlreadyAtTop
///   finish        SessionStillActive
/// The engine keeps references to the corpus and analyzer; both must outlive it.
class GameEngine {
 public:
  GameEngine(GameConfig config, const corpus::Corpus& corpus, const analyzer::Analyzer& analyzer);

  const GameConfig& config() const { return config_; }
  const corpus::Corpus& corpus() const { return corpus_; }
  const analyzer::Analyzer& analyzer() const { return analyzer_; }

  // Level plan for `tier`; its seed is derived from the session seed.
  corpus::LevelPlan plan_for(Mode mode, Tier tier, std::uint64_t session_seed) const;

  SessionState new_session(Mode mode, std::uint64_t seed, std::string session_id = {}) const;
  Step apply_action(SessionState s, Action a, Millis at) const;
  Step ask_teacher(SessionState s) const;
  SessionState tick(SessionState s, Millis elapsed) const;
  SessionState advance_level(SessionState s) const;
  // Ends play early. At LevelComplete on the last tier this counts as completion.
  SessionState quit(SessionState s) const;
  SessionSummary finish_session(const SessionState& s) const;

  // Tip for a corpus worm: its override, or the tip of its heaviest cue.
  const analyzer::TeacherTip& tip_for_worm(const std::string& worm_id) const;

 private:
  void load_level(SessionState& s, Tier tier) const;

  GameConfig config_;
  const corpus::Corpus& corpus_;
  const analyzer::Analyzer& analyzer_;
  std::unordered_map<std::string, analyzer::TeacherTip> tips_;
};

}  // namespace phishpond::game
