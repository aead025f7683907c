#include "phishpond/config_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "phishpond/codec.hpp"
#include "phishpond/error.hpp"

namespace phishpond {

namespace {

using nlohmann::json;

[[noreturn]] void invalid(const std::string& why) { throw Error(ErrorCode::InvalidConfig, why); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) invalid(std::string("missing config field ") + key);
  return j.at(key);
}

double number(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number()) invalid(std::string("config field ") + key + " must be a number");
  return v.get<double>();
}

int integer(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_number_integer()) invalid(std::string("config field ") + key + " must be an integer");
  return v.get<int>();
}

std::vector<std::string> strings(const json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.contains(key)) return out;
  const auto& v = j.at(key);
  if (!v.is_array()) invalid(std::string("config field ") + key + " must be an array");
  for (const auto& s : v) {
    if (!s.is_string()) invalid(std::string("config field ") + key + " must hold strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

std::string text(const json& j, const char* key) {
  const auto& v = field(j, key);
  if (!v.is_string()) invalid(std::string("config field ") + key + " must be a string");
  return v.get<std::string>();
}

game::GameConfig game_from_json(const json& j) {
  std::array<game::LevelRules, 3> levels{};
  const auto& per_level = field(j, "levels");
  for (Tier t : kTiers) {
    const auto& r = field(per_level, std::string(to_string(t)).c_str());
    auto& out = levels[index_of(t)];
    const double seconds = number(r, "time_limit_s");
    out.time_limit = Millis{static_cast<std::int64_t>(std::llround(seconds * 1000.0))};
    out.worm_count = integer(r, "worm_count");
    out.phish_fraction = number(r, "phish_fraction");
    out.points_correct = integer(r, "points_correct");
    out.points_wrong = integer(r, "points_wrong");
    out.hint_penalty = integer(r, "hint_penalty");
  }
  return game::GameConfig(levels, integer(j, "lives"));
}

ttat::TtatWeights ttat_from_json(const json& j) {
  ttat::TtatWeights w;
  const auto& threat = field(j, "threat");
  w.severity = number(threat, "severity");
  w.susceptibility = number(threat, "susceptibility");
  w.severity_x_susceptibility = number(threat, "severity_x_susceptibility");
  const auto& motivation = field(j, "motivation");
  w.threat = number(motivation, "threat");
  w.effectiveness = number(motivation, "effectiveness");
  w.threat_x_effectiveness = number(motivation, "threat_x_effectiveness");
  w.self_efficacy = number(motivation, "self_efficacy");
  w.cost = number(motivation, "cost");
  w.effectiveness_without_hints = number(j, "effectiveness_without_hints");
  w.validate();
  return w;
}

analyzer::BrandLexicon brands_from_json(const json& j, const analyzer::SuffixTable& suffixes) {
  const auto& list = field(j, "brands");
  if (!list.is_array()) invalid("brands must be an array");
  std::vector<analyzer::Brand> brands;
  for (const auto& b : list)
    brands.push_back({text(b, "id"), strings(b, "domains"), strings(b, "tokens")});
  return analyzer::BrandLexicon(std::move(brands), suffixes);
}

analyzer::CueConfig cues_from_json(const json& j, const FileReader& read) {
  analyzer::CueConfig cfg;
  const auto& weights = field(j, "weights");
  if (!weights.is_object()) invalid("cue weights must be an object");
  for (const auto& [name, v] : weights.items()) {
    const auto kind = analyzer::parse_cue_kind(name);
    if (!kind) invalid("unknown cue kind " + name);
    if (!v.is_number()) invalid("weight of " + name + " must be a number");
    cfg.weights[*kind] = analyzer::Weight::from_double(v.get<double>());
  }
  cfg.threshold = analyzer::Weight::from_double(number(j, "threshold"));
  cfg.max_subdomains = integer(j, "max_subdomains");
  if (cfg.max_subdomains < 1) invalid("max_subdomains must be at least 1");
  for (auto& ext : strings(j, "dangerous_extensions")) {
    while (!ext.empty() && ext.front() == '.') ext.erase(ext.begin());
    cfg.dangerous_extensions.push_back(analyzer::ascii_lower(ext));
  }
  cfg.suffixes = analyzer::SuffixTable(strings(j, "extra_suffixes"));
  cfg.urgency = analyzer::PhraseLexicon::from_text(read(text(j, "urgency_lexicon")));
  cfg.salutations = analyzer::SalutationLexicon::from_text(read(text(j, "salutation_lexicon")));
  return cfg;
}

}  // namespace

namespace detail {
// Generated from data/ at configure time (cmake/embedded_data.cpp.in).
const std::pair<std::string_view, std::string_view>* embedded_files(std::size_t& n);
}  // namespace detail

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x00000100000001b3ULL;
  }
  return h;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::NotFound, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Ruleset ruleset_from_json(const json& config, const FileReader& read) {
  if (!config.is_object()) invalid("config must be a JSON object");
  auto cues = cues_from_json(field(config, "cues"), read);
  json brands_doc;
  try {
    brands_doc = json::parse(read(text(field(config, "cues"), "brands")));
  } catch (const json::parse_error& e) {
    invalid(std::string("brand lexicon: ") + e.what());
  }
  auto brands = brands_from_json(brands_doc, cues.suffixes);
  return Ruleset{game_from_json(field(config, "game")), std::move(cues), std::move(brands),
                 ttat_from_json(field(config, "ttat"))};
}

Ruleset load_ruleset(const std::filesystem::path& config_file) {
  json doc;
  try {
    doc = json::parse(read_text_file(config_file));
  } catch (const json::parse_error& e) {
    invalid(config_file.string() + ": " + e.what());
  }
  const auto base = config_file.parent_path();
  return ruleset_from_json(doc, [&base](const std::string& rel) { return read_text_file(base / rel); });
}

Ruleset load_ruleset_embedded() {
  return ruleset_from_json(json::parse(embedded_file("config.json")),
                           [](const std::string& rel) { return std::string(embedded_file(rel)); });
}

const Ruleset& default_ruleset() {
  static const Ruleset kDefault = load_ruleset_embedded();
  return kDefault;
}

json Ruleset::canonical_json() const {
  json levels = json::object();
  for (Tier t : kTiers) {
    const auto& r = game.level(t);
    levels[std::string(to_string(t))] = {{"time_limit_ms", r.time_limit.count()},
                                         {"worm_count", r.worm_count},
                                         {"phish_fraction", r.phish_fraction},
                                         {"points_correct", r.points_correct},
                                         {"points_wrong", r.points_wrong},
                                         {"hint_penalty", r.hint_penalty}};
  }
  json weights = json::object();
  for (const auto& [kind, w] : cues.weights) weights[std::string(analyzer::to_string(kind))] = w.milli;
  json salutations = json::array();
  for (const auto& p : cues.salutations.patterns()) salutations.push_back(p);
  json brand_list = json::array();
  for (const auto& b : brands.brands())
    brand_list.push_back({{"id", b.id}, {"domains", b.domains}, {"tokens", b.tokens}});
  return {
      {"game", {{"lives", game.lives()}, {"levels", levels}}},
      {"cues",
       {{"weights_milli", weights},
        {"threshold_milli", cues.threshold.milli},
        {"max_subdomains", cues.max_subdomains},
        {"dangerous_extensions", cues.dangerous_extensions},
        {"suffixes", std::vector<std::string>(cues.suffixes.entries().begin(), cues.suffixes.entries().end())},
        {"urgency", cues.urgency.phrases()},
        {"salutations", salutations}}},
      {"brands", brand_list},
      {"ttat",
       {{"severity", ttat.severity},
        {"susceptibility", ttat.susceptibility},
        {"severity_x_susceptibility", ttat.severity_x_susceptibility},
        {"threat", ttat.threat},
        {"effectiveness", ttat.effectiveness},
        {"threat_x_effectiveness", ttat.threat_x_effectiveness},
        {"self_efficacy", ttat.self_efficacy},
        {"cost", ttat.cost},
        {"effectiveness_without_hints", ttat.effectiveness_without_hints}}},
  };
}

std::string Ruleset::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(codec::canonical(canonical_json()))));
  return buf;
}

std::string_view embedded_file(std::string_view name) {
  std::size_t n = 0;
  const auto* files = detail::embedded_files(n);
  for (std::size_t i = 0; i < n; ++i)
    if (files[i].first == name) return files[i].second;
  throw Error(ErrorCode::NotFound, "no embedded file " + std::string(name));
}

}  // namespace phishpond
