#include "phishpond/persistence/event.hpp"

#include "phishpond/codec.hpp"
#include "phishpond/error.hpp"

namespace phishpond::persistence {

using codec::CodecError;
using nlohmann::json;

std::string_view to_string(LoggedAction a) {
  switch (a) {
    case LoggedAction::Eat: return "eat";
    case LoggedAction::Reject: return "reject";
    case LoggedAction::Teacher: return "teacher";
    case LoggedAction::Quit: return "quit";
  }
  return "eat";
}

std::optional<LoggedAction> parse_logged_action(std::string_view s) {
  for (auto a : {LoggedAction::Eat, LoggedAction::Reject, LoggedAction::Teacher, LoggedAction::Quit})
    if (to_string(a) == s) return a;
  return std::nullopt;
}

namespace {

struct KindName {
  std::string_view operator()(const SessionStarted&) const { return "session_started"; }
  std::string_view operator()(const WormPresented&) const { return "worm_presented"; }
  std::string_view operator()(const ActionTaken&) const { return "action_taken"; }
  std::string_view operator()(const OutcomeEmitted&) const { return "outcome_emitted"; }
  std::string_view operator()(const Ticked&) const { return "ticked"; }
  std::string_view operator()(const LevelAdvanced&) const { return "level_advanced"; }
  std::string_view operator()(const SessionEnded&) const { return "session_ended"; }
};

// Fields of each kind, merged into the envelope object.
struct BodyFields {
  json operator()(const SessionStarted& e) const {
    // The seed is a decimal string: JSON readers commonly lose precision
    // above 2^53.
    return {{"session_id", e.session_id},         {"player_id", e.player_id},
            {"seed", std::to_string(e.seed)},      {"config_hash", e.config_hash},
            {"corpus_version", e.corpus_version}, {"mode", to_string(e.mode)}};
  }
  json operator()(const WormPresented& e) const { return {{"worm_id", e.worm_id}}; }
  json operator()(const ActionTaken& e) const { return {{"action", to_string(e.action)}}; }
  json operator()(const OutcomeEmitted& e) const { return {{"outcome", codec::to_json(e.outcome)}}; }
  json operator()(const Ticked& e) const { return {{"elapsed_ms", e.elapsed.count()}}; }
  json operator()(const LevelAdvanced& e) const { return {{"level", to_string(e.level)}}; }
  json operator()(const SessionEnded& e) const {
    return {{"summary", codec::to_json(e.summary)},
            {"constructs", e.constructs ? codec::to_json(*e.constructs) : json(nullptr)}};
  }
};

std::uint64_t parse_seed(const std::string& text) {
  if (text.empty() || text.size() > 20 || text.find_first_not_of("0123456789") != std::string::npos)
    throw CodecError("seed must be a decimal string");
  try {
    return std::stoull(text);
  } catch (const std::exception&) {
    throw CodecError("seed out of range");
  }
}

EventBody body_from_json(const json& j, const std::string& kind) {
  if (kind == "session_started") {
    SessionStarted e;
    e.session_id = codec::require_string(j, "session_id");
    e.player_id = codec::optional_string(j, "player_id");
    e.seed = parse_seed(codec::require_string(j, "seed"));
    e.config_hash = codec::require_string(j, "config_hash");
    e.corpus_version = codec::require_string(j, "corpus_version");
    const auto mode = parse_mode(codec::require_string(j, "mode"));
    if (!mode) throw CodecError("unknown mode");
    e.mode = *mode;
    return e;
  }
  if (kind == "worm_presented") return WormPresented{codec::require_string(j, "worm_id")};
  if (kind == "action_taken") {
    const auto a = parse_logged_action(codec::require_string(j, "action"));
    if (!a) throw CodecError("unknown action");
    return ActionTaken{*a};
  }
  if (kind == "outcome_emitted") return OutcomeEmitted{codec::outcome_from_json(codec::require(j, "outcome"))};
  if (kind == "ticked") return Ticked{Millis{codec::require_int(j, "elapsed_ms")}};
  if (kind == "level_advanced") {
    const auto t = parse_tier(codec::require_string(j, "level"));
    if (!t) throw CodecError("unknown level");
    return LevelAdvanced{*t};
  }
  if (kind == "session_ended") {
    SessionEnded e;
    e.summary = codec::summary_from_json(codec::require(j, "summary"));
    if (const auto& c = codec::require(j, "constructs"); !c.is_null())
      e.constructs = codec::constructs_from_json(c);
    return e;
  }
  throw CodecError("unknown event kind '" + kind + "'");
}

}  // namespace

std::string_view kind_name(const EventBody& body) { return std::visit(KindName{}, body); }

json to_json(const SessionEvent& e) {
  json out = std::visit(BodyFields{}, e.body);
  out["seq"] = e.seq;
  out["at_ms"] = e.at.count();
  out["kind"] = kind_name(e.body);
  return out;
}

SessionEvent event_from_json(const json& j) {
  SessionEvent e;
  const auto seq = codec::require_int(j, "seq");
  if (seq < 1) throw CodecError("seq must be positive");
  e.seq = static_cast<std::uint64_t>(seq);
  e.at = Millis{codec::require_int(j, "at_ms")};
  e.body = body_from_json(j, codec::require_string(j, "kind"));
  return e;
}

std::string to_jsonl(const SessionEvent& e) { return codec::canonical(to_json(e)); }

std::vector<SessionEvent> parse_log(std::string_view text) {
  std::vector<SessionEvent> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(pos, end - pos);
    pos = end + 1;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::uint64_t expected = out.empty() ? 1 : out.back().seq + 1;
    try {
      out.push_back(event_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw CorruptLog(expected, std::string("unreadable event: ") + e.what());
    } catch (const CodecError& e) {
      throw CorruptLog(expected, std::string("malformed event: ") + e.what());
    }
  }
  return out;
}

}  // namespace phishpond::persistence
