#include "phishpond/persistence/replay.hpp"

#include "phishpond/codec.hpp"
#include "phishpond/error.hpp"

namespace phishpond::persistence {

std::optional<ttat::TtatConstructs> constructs_for(const game::SessionState& s,
                                                   const game::SessionSummary& summary,
                                                   const game::GameConfig& cfg,
                                                   const ttat::TtatWeights& w) {
  if (s.decided.empty()) return std::nullopt;
  return ttat::estimate_constructs(summary, s.decided, cfg, w);
}

SessionRecorder::SessionRecorder(const game::GameEngine& engine, ttat::TtatWeights weights,
                                 std::string config_hash, EventLog log)
    : engine_(engine), weights_(weights), config_hash_(std::move(config_hash)), log_(std::move(log)) {}

const game::SessionState& SessionRecorder::state() const {
  if (!state_) throw Error(ErrorCode::SessionNotActive, "session has not started");
  return *state_;
}

void SessionRecorder::require_open() const {
  if (!state_) throw Error(ErrorCode::SessionNotActive, "session has not started");
  if (ended_) throw Error(ErrorCode::SessionNotActive, "session has ended");
}

void SessionRecorder::emit(Millis at, EventBody body) {
  log_.append(SessionEvent{log_.last_seq() + 1, at, std::move(body)});
}

void SessionRecorder::present_current() {
  if (state_->phase == game::Phase::InLevel && state_->current)
    emit(state_->presented_at, WormPresented{state_->current->id});
}

const game::SessionState& SessionRecorder::start(Mode mode, std::uint64_t seed, std::string session_id,
                                                 std::string player_id) {
  if (state_) throw Error(ErrorCode::DuplicateSession, "recorder already holds a session");
  auto s = engine_.new_session(mode, seed, std::move(session_id));
  player_id_ = std::move(player_id);
  emit(Millis{0}, SessionStarted{s.session_id, player_id_, seed, config_hash_, engine_.corpus().version, mode});
  state_ = std::move(s);
  present_current();
  return *state_;
}

game::ActionOutcome SessionRecorder::act(game::Action a, Millis at) {
  require_open();
  auto step = engine_.apply_action(*state_, a, at);
  emit(at, ActionTaken{a == game::Action::Eat ? LoggedAction::Eat : LoggedAction::Reject});
  emit(at, OutcomeEmitted{step.outcome});
  state_ = std::move(step.state);
  present_current();
  return step.outcome;
}

game::ActionOutcome SessionRecorder::ask_teacher() {
  require_open();
  auto step = engine_.ask_teacher(*state_);
  emit(state_->elapsed, ActionTaken{LoggedAction::Teacher});
  emit(state_->elapsed, OutcomeEmitted{step.outcome});
  state_ = std::move(step.state);
  return step.outcome;
}

void SessionRecorder::tick(Millis elapsed) {
  require_open();
  auto next = engine_.tick(*state_, elapsed);
  if (state_->phase != game::Phase::InLevel) return;  // a no-op; nothing to record
  state_ = std::move(next);
  emit(state_->elapsed, Ticked{elapsed});
}

void SessionRecorder::advance_level() {
  require_open();
  auto next = engine_.advance_level(*state_);
  state_ = std::move(next);
  emit(state_->elapsed, LevelAdvanced{state_->level});
  present_current();
}

void SessionRecorder::quit() {
  require_open();
  auto next = engine_.quit(*state_);
  state_ = std::move(next);
  emit(state_->elapsed, ActionTaken{LoggedAction::Quit});
}

const SessionEnded& SessionRecorder::finish() {
  require_open();
  SessionEnded end;
  end.summary = engine_.finish_session(*state_);
  end.constructs = constructs_for(*state_, end.summary, engine_.config(), weights_);
  emit(state_->elapsed, end);
  ended_ = std::move(end);
  return *ended_;
}

namespace {

class Walker {
 public:
  Walker(const std::vector<SessionEvent>& events) : events_(events) {}

  bool done() const { return pos_ >= events_.size(); }
  const SessionEvent& next() { return events_[pos_++]; }
  // Seq the next event carries, or would carry if the log ended here.
  std::int64_t next_seq() const {
    return static_cast<std::int64_t>(done() ? events_.size() + 1 : events_[pos_].seq);
  }

  template <typename T>
  const T& expect(const char* what) {
    if (done()) throw CorruptLog(next_seq(), std::string("log ends where ") + what + " was expected");
    const auto& e = next();
    const auto* body = std::get_if<T>(&e.body);
    if (!body)
      throw CorruptLog(static_cast<std::int64_t>(e.seq),
                       std::string("expected ") + what + ", found " + std::string(kind_name(e.body)));
    return *body;
  }

  const SessionEvent& last() const { return events_[pos_ - 1]; }

 private:
  const std::vector<SessionEvent>& events_;
  std::size_t pos_ = 0;
};

void expect_presented(Walker& w, const game::SessionState& s) {
  if (s.phase != game::Phase::InLevel || !s.current) return;
  const auto& p = w.expect<WormPresented>("worm_presented");
  if (p.worm_id != s.current->id)
    throw CorruptLog(static_cast<std::int64_t>(w.last().seq),
                     "presented worm " + p.worm_id + " but the engine presents " + s.current->id);
}

void expect_outcome(Walker& w, const game::ActionOutcome& computed) {
  const auto& o = w.expect<OutcomeEmitted>("outcome_emitted");
  if (!(o.outcome == computed))
    throw CorruptLog(static_cast<std::int64_t>(w.last().seq), "logged outcome differs from the engine's");
}

}  // namespace

game::SessionSummary replay(const std::vector<SessionEvent>& events, const game::GameEngine& engine,
                            const std::string& config_hash, const ttat::TtatWeights& weights) {
  for (std::size_t k = 0; k < events.size(); ++k)
    if (events[k].seq != k + 1)
      throw CorruptLog(static_cast<std::int64_t>(k + 1), "sequence breaks at seq " + std::to_string(k + 1));

  Walker w(events);
  const auto& started = w.expect<SessionStarted>("session_started");
  if (started.corpus_version != engine.corpus().version)
    throw Error(ErrorCode::VersionMismatch, "log was recorded against corpus version " +
                                                started.corpus_version + ", replaying against " +
                                                engine.corpus().version);
  if (started.config_hash != config_hash)
    throw Error(ErrorCode::VersionMismatch,
                "log was recorded with config " + started.config_hash + ", replaying with " + config_hash);

  auto s = engine.new_session(started.mode, started.seed, started.session_id);
  expect_presented(w, s);

  while (!w.done()) {
    const auto& e = w.next();
    const auto seq = static_cast<std::int64_t>(e.seq);
    try {
      if (const auto* a = std::get_if<ActionTaken>(&e.body)) {
        switch (a->action) {
          case LoggedAction::Eat:
          case LoggedAction::Reject: {
            auto step = engine.apply_action(
                std::move(s), a->action == LoggedAction::Eat ? game::Action::Eat : game::Action::Reject, e.at);
            s = std::move(step.state);
            expect_outcome(w, step.outcome);
            expect_presented(w, s);
            break;
          }
          case LoggedAction::Teacher: {
            auto step = engine.ask_teacher(std::move(s));
            s = std::move(step.state);
            expect_outcome(w, step.outcome);
            break;
          }
          case LoggedAction::Quit: s = engine.quit(std::move(s)); break;
        }
      } else if (const auto* t = std::get_if<Ticked>(&e.body)) {
        s = engine.tick(std::move(s), t->elapsed);
      } else if (const auto* l = std::get_if<LevelAdvanced>(&e.body)) {
        s = engine.advance_level(std::move(s));
        if (s.level != l->level) throw CorruptLog(seq, "advanced to a different level than logged");
        expect_presented(w, s);
      } else if (const auto* end = std::get_if<SessionEnded>(&e.body)) {
        const auto summary = engine.finish_session(s);
        if (codec::canonical(codec::to_json(summary)) != codec::canonical(codec::to_json(end->summary)))
          throw CorruptLog(seq, "logged summary differs from the replayed one");
        const auto constructs = constructs_for(s, summary, engine.config(), weights);
        const auto as_json = [](const std::optional<ttat::TtatConstructs>& c) {
          return c ? codec::canonical(codec::to_json(*c)) : std::string("null");
        };
        if (as_json(constructs) != as_json(end->constructs))
          throw CorruptLog(seq, "logged constructs differ from the replayed ones");
        if (!w.done()) throw CorruptLog(w.next_seq(), "events follow session_ended");
        return summary;
      } else {
        throw CorruptLog(seq, "unexpected " + std::string(kind_name(e.body)));
      }
    } catch (const CorruptLog&) {
      throw;
    } catch (const Error& err) {
      throw CorruptLog(seq, "engine rejects logged event: " + err.detail());
    }
  }
  throw CorruptLog(w.next_seq(), "log ends without session_ended");
}

}  // namespace phishpond::persistence
