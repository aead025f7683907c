#pragma once

// JSON shapes shared by the corpus file, the session log, profiles and the
// wire protocol. Field names and enum spellings are documented in
// docs/formats.md; keep the two in sync.

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "phishpond/analyzer/analyzer.hpp"
#include "phishpond/corpus/corpus.hpp"
#include "phishpond/game/session.hpp"
#include "phishpond/ttat/ttat.hpp"

namespace phishpond::codec {

using nlohmann::json;

class CodecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json to_json(const analyzer::EmailMessage& m);
analyzer::EmailMessage email_from_json(const json& j);

json to_json(const corpus::WormSpec& w);
corpus::WormSpec worm_from_json(const json& j);

// What a player may see of a worm: id, mode and payload only.
json worm_view(const corpus::WormSpec& w);

json to_json(const analyzer::Cue& c);
json to_json(const analyzer::Verdict& v);
json to_json(const analyzer::TeacherTip& t);
analyzer::TeacherTip tip_from_json(const json& j);

json to_json(const game::ActionOutcome& o);
game::ActionOutcome outcome_from_json(const json& j);

json to_json(const game::SessionSummary& s);
game::SessionSummary summary_from_json(const json& j);

json to_json(const game::DecisionRecord& d);
game::DecisionRecord decision_from_json(const json& j);

json to_json(const ttat::TtatConstructs& c);
ttat::TtatConstructs constructs_from_json(const json& j);

// Sorted keys, no whitespace: the byte form compared by replay checks and
// hashed for config digests.
std::string canonical(const json& j);

// Field access that raises CodecError with the field name.
const json& require(const json& j, const char* key);
std::string require_string(const json& j, const char* key);
std::string optional_string(const json& j, const char* key, std::string fallback = {});
std::int64_t require_int(const json& j, const char* key);
double require_number(const json& j, const char* key);
bool require_bool(const json& j, const char* key);

}  // namespace phishpond::codec
