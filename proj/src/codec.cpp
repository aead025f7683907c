#include "phishpond/codec.hpp"

namespace phishpond::codec {

namespace {

template <typename Enum, typename Parser>
Enum require_enum(const json& j, const char* key, Parser parse) {
  const auto text = require_string(j, key);
  const auto value = parse(text);
  if (!value) throw CodecError(std::string("unknown value '") + text + "' for field " + key);
  return *value;
}

std::optional<game::Action> parse_action(std::string_view s) {
  if (s == "eat") return game::Action::Eat;
  if (s == "reject") return game::Action::Reject;
  return std::nullopt;
}

std::optional<game::SessionOutcome> parse_outcome(std::string_view s) {
  if (s == "completed") return game::SessionOutcome::Completed;
  if (s == "game_over") return game::SessionOutcome::GameOver;
  if (s == "quit") return game::SessionOutcome::Quit;
  return std::nullopt;
}

json tier_map(const std::map<Tier, double>& m) {
  json out = json::object();
  for (const auto& [tier, v] : m) out[std::string(to_string(tier))] = v;
  return out;
}

json tier_map(const std::map<Tier, int>& m) {
  json out = json::object();
  for (const auto& [tier, v] : m) out[std::string(to_string(tier))] = v;
  return out;
}

template <typename V>
std::map<Tier, V> tier_map_from(const json& j, const char* key) {
  const auto& obj = require(j, key);
  if (!obj.is_object()) throw CodecError(std::string("field ") + key + " must be an object");
  std::map<Tier, V> out;
  for (const auto& [name, v] : obj.items()) {
    const auto tier = parse_tier(name);
    if (!tier || !v.is_number()) throw CodecError(std::string("bad entry in ") + key);
    out[*tier] = v.template get<V>();
  }
  return out;
}

}  // namespace

const json& require(const json& j, const char* key) {
  if (!j.is_object()) throw CodecError(std::string("expected an object holding ") + key);
  const auto it = j.find(key);
  if (it == j.end()) throw CodecError(std::string("missing field ") + key);
  return *it;
}

std::string require_string(const json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_string()) throw CodecError(std::string("field ") + key + " must be a string");
  return v.get<std::string>();
}

std::string optional_string(const json& j, const char* key, std::string fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return require_string(j, key);
}

std::int64_t require_int(const json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_number_integer()) throw CodecError(std::string("field ") + key + " must be an integer");
  return v.get<std::int64_t>();
}

double require_number(const json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_number()) throw CodecError(std::string("field ") + key + " must be a number");
  return v.get<double>();
}

bool require_bool(const json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_boolean()) throw CodecError(std::string("field ") + key + " must be a boolean");
  return v.get<bool>();
}

std::string canonical(const json& j) { return j.dump(); }

json to_json(const analyzer::EmailMessage& m) {
  json links = json::array();
  for (const auto& l : m.links) links.push_back({{"display_text", l.display_text}, {"target_url", l.target_url}});
  json attachments = json::array();
  for (const auto& a : m.attachments) attachments.push_back(a.filename);
  json out = {{"sender_display", m.sender_display}, {"sender_address", m.sender_address},
              {"subject", m.subject},               {"salutation", m.salutation},
              {"body", m.body},                     {"links", links},
              {"attachments", attachments}};
  out["claimed_brand_logo"] = m.claimed_brand_logo ? json(*m.claimed_brand_logo) : json(nullptr);
  return out;
}

analyzer::EmailMessage email_from_json(const json& j) {
  if (!j.is_object()) throw CodecError("email must be an object");
  analyzer::EmailMessage m;
  m.sender_display = optional_string(j, "sender_display");
  m.sender_address = require_string(j, "sender_address");
  m.subject = optional_string(j, "subject");
  m.salutation = optional_string(j, "salutation");
  m.body = optional_string(j, "body");
  if (j.contains("links")) {
    const auto& links = j.at("links");
    if (!links.is_array()) throw CodecError("field links must be an array");
    for (const auto& l : links)
      m.links.push_back({require_string(l, "display_text"), require_string(l, "target_url")});
  }
  if (j.contains("attachments")) {
    const auto& atts = j.at("attachments");
    if (!atts.is_array()) throw CodecError("field attachments must be an array");
    for (const auto& a : atts) {
      if (!a.is_string()) throw CodecError("attachments must be filenames");
      m.attachments.push_back({a.get<std::string>()});
    }
  }
  if (j.contains("claimed_brand_logo") && !j.at("claimed_brand_logo").is_null())
    m.claimed_brand_logo = require_string(j, "claimed_brand_logo");
  return m;
}

json to_json(const corpus::WormSpec& w) {
  json out = {{"id", w.id},
              {"mode", to_string(w.mode)},
              {"truth", to_string(w.truth)},
              {"tier", to_string(w.tier)}};
  if (const auto* url = w.url()) out["url"] = *url;
  if (const auto* email = w.email()) out["email"] = to_json(*email);
  if (w.tip_override) out["tip"] = *w.tip_override;
  return out;
}

corpus::WormSpec worm_from_json(const json& j) {
  if (!j.is_object()) throw CodecError("worm record must be an object");
  corpus::WormSpec w;
  w.id = require_string(j, "id");
  if (w.id.empty()) throw CodecError("worm id must not be empty");
  w.mode = require_enum<Mode>(j, "mode", parse_mode);
  w.truth = require_enum<Label>(j, "truth", parse_label);
  w.tier = require_enum<Tier>(j, "tier", parse_tier);
  if (w.mode == Mode::Url) {
    w.payload = require_string(j, "url");
  } else {
    w.payload = email_from_json(require(j, "email"));
  }
  if (j.contains("tip") && !j.at("tip").is_null()) w.tip_override = require_string(j, "tip");
  return w;
}

json worm_view(const corpus::WormSpec& w) {
  json out = {{"id", w.id}, {"mode", to_string(w.mode)}};
  if (const auto* url = w.url()) out["url"] = *url;
  if (const auto* email = w.email()) out["email"] = to_json(*email);
  return out;
}

json to_json(const analyzer::Cue& c) {
  return {{"kind", analyzer::to_string(c.kind)}, {"weight", c.weight.value()}, {"evidence", c.evidence}};
}

json to_json(const analyzer::Verdict& v) {
  json cues = json::array();
  for (const auto& c : v.cues) cues.push_back(to_json(c));
  return {{"cues", cues}, {"risk_score", v.risk_score()}, {"label", to_string(v.label)}};
}

json to_json(const analyzer::TeacherTip& t) {
  return {{"text", t.text},
          {"cue_kind", t.cue_kind ? json(analyzer::to_string(*t.cue_kind)) : json(nullptr)}};
}

analyzer::TeacherTip tip_from_json(const json& j) {
  analyzer::TeacherTip t;
  t.text = require_string(j, "text");
  const auto& kind = require(j, "cue_kind");
  if (!kind.is_null()) {
    const auto parsed = analyzer::parse_cue_kind(kind.get<std::string>());
    if (!parsed) throw CodecError("unknown cue kind in tip");
    t.cue_kind = *parsed;
  }
  return t;
}

json to_json(const game::ActionOutcome& o) {
  return {{"feedback", o.feedback_text},
          {"score_delta", o.score_delta},
          {"life_delta", o.life_delta},
          {"correct", o.correct ? json(*o.correct) : json(nullptr)},
          {"tip", o.tip ? to_json(*o.tip) : json(nullptr)}};
}

game::ActionOutcome outcome_from_json(const json& j) {
  game::ActionOutcome o;
  o.feedback_text = require_string(j, "feedback");
  o.score_delta = static_cast<int>(require_int(j, "score_delta"));
  o.life_delta = static_cast<int>(require_int(j, "life_delta"));
  if (const auto& c = require(j, "correct"); !c.is_null()) o.correct = require_bool(j, "correct");
  if (const auto& t = require(j, "tip"); !t.is_null()) o.tip = tip_from_json(t);
  return o;
}

json to_json(const game::SessionSummary& s) {
  return {{"session_id", s.session_id},
          {"mode", to_string(s.mode)},
          {"final_score", s.final_score},
          {"accuracy", s.accuracy},
          {"level_accuracy", tier_map(s.level_accuracy)},
          {"level_scores", tier_map(s.level_scores)},
          {"decisions", s.decisions},
          {"correct", s.correct},
          {"hints_used", s.hints_used},
          {"phish_decided", s.phish_decided},
          {"phish_missed", s.phish_missed},
          {"legit_rejected", s.legit_rejected},
          {"highest_level", to_string(s.highest_level)},
          {"duration_ms", s.duration.count()},
          {"outcome", game::to_string(s.outcome)},
          {"timed_out", s.timed_out}};
}

game::SessionSummary summary_from_json(const json& j) {
  game::SessionSummary s;
  s.session_id = require_string(j, "session_id");
  s.mode = require_enum<Mode>(j, "mode", parse_mode);
  s.final_score = static_cast<int>(require_int(j, "final_score"));
  s.accuracy = require_number(j, "accuracy");
  s.level_accuracy = tier_map_from<double>(j, "level_accuracy");
  s.level_scores = tier_map_from<int>(j, "level_scores");
  s.decisions = static_cast<int>(require_int(j, "decisions"));
  s.correct = static_cast<int>(require_int(j, "correct"));
  s.hints_used = static_cast<int>(require_int(j, "hints_used"));
  s.phish_decided = static_cast<int>(require_int(j, "phish_decided"));
  s.phish_missed = static_cast<int>(require_int(j, "phish_missed"));
  s.legit_rejected = static_cast<int>(require_int(j, "legit_rejected"));
  s.highest_level = require_enum<Tier>(j, "highest_level", parse_tier);
  s.duration = Millis{require_int(j, "duration_ms")};
  s.outcome = require_enum<game::SessionOutcome>(j, "outcome", parse_outcome);
  s.timed_out = require_bool(j, "timed_out");
  return s;
}

json to_json(const game::DecisionRecord& d) {
  return {{"worm_id", d.worm_id},
          {"level", to_string(d.level)},
          {"action", game::to_string(d.action)},
          {"truth", to_string(d.truth)},
          {"correct", d.correct},
          {"hint_used", d.hint_used},
          {"decision_time_ms", d.decision_time.count()}};
}

game::DecisionRecord decision_from_json(const json& j) {
  game::DecisionRecord d;
  d.worm_id = require_string(j, "worm_id");
  d.level = require_enum<Tier>(j, "level", parse_tier);
  d.action = require_enum<game::Action>(j, "action", parse_action);
  d.truth = require_enum<Label>(j, "truth", parse_label);
  d.correct = require_bool(j, "correct");
  d.hint_used = require_bool(j, "hint_used");
  d.decision_time = Millis{require_int(j, "decision_time_ms")};
  return d;
}

json to_json(const ttat::TtatConstructs& c) {
  return {{"perceived_severity", c.perceived_severity},
          {"perceived_susceptibility", c.perceived_susceptibility},
          {"perceived_threat", c.perceived_threat},
          {"safeguard_effectiveness", c.safeguard_effectiveness},
          {"safeguard_cost", c.safeguard_cost},
          {"self_efficacy", c.self_efficacy},
          {"avoidance_motivation", c.avoidance_motivation}};
}

ttat::TtatConstructs constructs_from_json(const json& j) {
  ttat::TtatConstructs c;
  c.perceived_severity = require_number(j, "perceived_severity");
  c.perceived_susceptibility = require_number(j, "perceived_susceptibility");
  c.perceived_threat = require_number(j, "perceived_threat");
  c.safeguard_effectiveness = require_number(j, "safeguard_effectiveness");
  c.safeguard_cost = require_number(j, "safeguard_cost");
  c.self_efficacy = require_number(j, "self_efficacy");
  c.avoidance_motivation = require_number(j, "avoidance_motivation");
  return c;
}

}  // namespace phishpond::codec
