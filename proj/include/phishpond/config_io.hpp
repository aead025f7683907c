#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "phishpond/analyzer/analyzer.hpp"
#include "phishpond/game/config.hpp"
#include "phishpond/ttat/ttat.hpp"

namespace phishpond {

// Everything that decides how a session plays out, loaded from one config
// file plus the lexicon files it references.
struct Ruleset {
  game::GameConfig game;
  analyzer::CueConfig cues;
  analyzer::BrandLexicon brands;
  ttat::TtatWeights ttat;

  // Canonical JSON of the resolved ruleset and its FNV-1a 64 digest (hex).
  nlohmann::json canonical_json() const;
  std::string hash() const;
};

// Reads a file referenced from the config, by path relative to the config.
using FileReader = std::function<std::string(const std::string& relative_path)>;

// Throws Error(InvalidConfig) for schema violations, Error(NotFound) for
// missing referenced files.
Ruleset ruleset_from_json(const nlohmann::json& config, const FileReader& read);
Ruleset load_ruleset(const std::filesystem::path& config_file);

// The shipped data/config.json and friends, compiled into the binary.
Ruleset load_ruleset_embedded();
const Ruleset& default_ruleset();

// Embedded copies of the files under data/. Throws Error(NotFound).
std::string_view embedded_file(std::string_view name);

std::string read_text_file(const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace phishpond
