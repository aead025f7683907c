#include "phishpond/frontdoor/protocol.hpp"

#include "phishpond/codec.hpp"
#include "phishpond/persistence/profile.hpp"

namespace phishpond::frontdoor {

using nlohmann::json;

namespace {

json envelope(std::string_view type) { return {{"v", kProtocolVersion}, {"type", type}}; }

std::string string_field(const json& j, const char* key, bool required) {
  const auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    if (required) throw BadMessage(std::string("missing field ") + key);
    return {};
  }
  if (!it->is_string()) throw BadMessage(std::string("field ") + key + " must be a string");
  return it->get<std::string>();
}

void allow_only(const json& j, std::initializer_list<std::string_view> keys) {
  for (const auto& [k, _] : j.items()) {
    bool known = k == "v" || k == "type";
    for (auto allowed : keys) known = known || k == allowed;
    if (!known) throw BadMessage("unexpected field " + k);
  }
}

}  // namespace

ClientMessage parse_client_message(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception&) {
    throw BadMessage("message is not valid JSON");
  }
  if (!j.is_object()) throw BadMessage("message must be a JSON object");
  if (const auto v = j.find("v"); v != j.end() && !(v->is_number_integer() && v->get<int>() == kProtocolVersion))
    throw BadMessage("unsupported protocol version");
  const auto type = string_field(j, "type", true);

  if (type == "start_session") {
    allow_only(j, {"mode", "player_id", "display_name", "seed"});
    StartSession m;
    const auto mode = parse_mode(string_field(j, "mode", true));
    if (!mode) throw BadMessage("mode must be \"url\" or \"email\"");
    m.mode = *mode;
    m.player_id = string_field(j, "player_id", false);
    if (!m.player_id.empty() && !persistence::valid_id(m.player_id))
      throw BadMessage("player_id may hold only letters, digits, '-' and '_' (64 at most)");
    m.display_name = string_field(j, "display_name", false);
    if (const auto s = j.find("seed"); s != j.end() && !s->is_null()) {
      if (!s->is_number_unsigned()) throw BadMessage("seed must be a non-negative integer");
      m.seed = s->get<std::uint64_t>();
    }
    return m;
  }
  if (type == "action") {
    allow_only(j, {"action"});
    const auto a = string_field(j, "action", true);
    if (a == "eat") return ActionRequest{PlayerMove::Eat};
    if (a == "reject") return ActionRequest{PlayerMove::Reject};
    if (a == "teacher") return ActionRequest{PlayerMove::Teacher};
    throw BadMessage("action must be eat, reject or teacher");
  }
  if (type == "next_level") {
    allow_only(j, {});
    return NextLevel{};
  }
  if (type == "quit") {
    allow_only(j, {});
    return QuitRequest{};
  }
  throw BadMessage("unknown message type '" + type + "'");
}

json session_started_message(const game::SessionState& s, const game::GameConfig& cfg) {
  auto m = envelope("session_started");
  m["session_id"] = s.session_id;
  m["mode"] = to_string(s.mode);
  m["level"] = to_string(s.level);
  m["time_limit_ms"] = cfg.level(s.level).time_limit.count();
  m["worm_count"] = cfg.level(s.level).worm_count;
  m["lives"] = s.lives_remaining;
  m["score"] = s.score;
  return m;
}

json worm_message(const game::SessionState& s) {
  auto m = envelope("worm");
  m["worm"] = codec::worm_view(*s.current);
  // 0-based index of this worm within its level
  m["position"] = static_cast<int>(s.level_worm_ids.size() - s.pending.size()) - 1;
  m["level_size"] = s.level_worm_ids.size();
  m["clock_remaining_ms"] = s.clock_remaining.count();
  return m;
}

json outcome_message(const game::ActionOutcome& o, const game::SessionState& after) {
  auto m = envelope("outcome");
  m["feedback"] = o.feedback_text;
  m["score_delta"] = o.score_delta;
  m["life_delta"] = o.life_delta;
  m["score"] = after.score;
  m["lives"] = after.lives_remaining;
  m["correct"] = o.correct ? json(*o.correct) : json(nullptr);
  m["tip"] = o.tip ? codec::to_json(*o.tip) : json(nullptr);
  return m;
}

json level_complete_message(const game::SessionState& s) {
  auto m = envelope("level_complete");
  int decided = 0;
  int correct = 0;
  for (const auto& d : s.decided) {
    if (d.level != s.level) continue;
    ++decided;
    correct += d.correct ? 1 : 0;
  }
  m["level"] = to_string(s.level);
  m["level_score"] = s.level_scores.count(s.level) ? s.level_scores.at(s.level) : 0;
  m["level_accuracy"] = decided == 0 ? 0.0 : static_cast<double>(correct) / decided;
  m["score"] = s.score;
  m["lives"] = s.lives_remaining;
  const auto next = next_tier(s.level);
  m["next_level"] = next ? json(to_string(*next)) : json(nullptr);
  return m;
}

json level_started_message(const game::SessionState& s, const game::GameConfig& cfg) {
  auto m = envelope("level_started");
  m["level"] = to_string(s.level);
  m["time_limit_ms"] = cfg.level(s.level).time_limit.count();
  m["worm_count"] = cfg.level(s.level).worm_count;
  m["lives"] = s.lives_remaining;
  m["score"] = s.score;
  return m;
}

json clock_message(const game::SessionState& s) {
  auto m = envelope("clock");
  m["clock_remaining_ms"] = s.clock_remaining.count();
  return m;
}

json summary_message(const game::SessionSummary& summary,
                     const std::optional<ttat::TtatConstructs>& constructs) {
  auto m = envelope("session_summary");
  m["summary"] = codec::to_json(summary);
  m["constructs"] = constructs ? codec::to_json(*constructs) : json(nullptr);
  m["reference_guide_url"] = kReferenceGuideUrl;
  return m;
}

json error_message(std::string_view code, std::string_view detail) {
  auto m = envelope("error");
  m["code"] = code;
  m["detail"] = detail;
  return m;
}

}  // namespace phishpond::frontdoor
