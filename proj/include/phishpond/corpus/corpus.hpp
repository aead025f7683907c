#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "phishpond/analyzer/analyzer.hpp"
#include "phishpond/analyzer/email.hpp"
#include "phishpond/common.hpp"
#include "phishpond/error.hpp"

namespace phishpond::corpus {

using WormPayload = std::variant<std::string, analyzer::EmailMessage>;

struct WormSpec {
  std::string id;
  Mode mode = Mode::Url;
  WormPayload payload;
  Label truth = Label::Legit;
  Tier tier = Tier::Beginner;
  std::optional<std::string> tip_override;

  const std::string* url() const { return std::get_if<std::string>(&payload); }
  const analyzer::EmailMessage* email() const {
    return std::get_if<analyzer::EmailMessage>(&payload);
  }

  bool operator==(const WormSpec&) const = default;
};

struct Corpus {
  std::vector<WormSpec> worms;
  std::string lexicon_ref = "default";
  std::string version = "unversioned";
};

// Accepts either {"version", "lexicon", "worms": [...]} or a bare array of
// worm records. Throws ParseError (with the line of the offending record) or
// Error(DuplicateId).
Corpus load_corpus(std::string_view bytes);
Corpus load_corpus_file(const std::filesystem::path& path);

// The seed corpus compiled into the binary (data/corpus.json).
const Corpus& shipped_corpus();

// Verdict for one worm under the analyzer (URL or email rules by mode).
analyzer::Verdict analyze_worm(const WormSpec& w, const analyzer::Analyzer& a);

struct Finding {
  enum class Kind { LabelMismatch, Unlearnable, TierViolation, Coverage };
  Kind kind;
  std::string worm_id;  // empty for corpus-level findings
  std::string message;
};

std::string_view to_string(Finding::Kind k);

struct ValidationReport {
  std::vector<Finding> findings;
  bool ok() const { return findings.empty(); }
};

// Advisory checks: label/verdict agreement, tier difficulty rules, and that
// every tier in use offers both labels in both modes.
ValidationReport validate_corpus(const Corpus& c, const analyzer::Analyzer& a);

struct LevelPlan {
  Tier level = Tier::Beginner;
  Mode mode = Mode::Url;
  int worm_count = 0;
  double phish_fraction = 0.0;
  Millis time_limit{0};
  std::uint64_t seed = 0;
};

class InsufficientCorpus : public Error {
 public:
  InsufficientCorpus(Tier tier, Mode mode, int needed, int available);
  Tier tier() const noexcept { return tier_; }
  Mode mode() const noexcept { return mode_; }
  int needed() const noexcept { return needed_; }
  int available() const noexcept { return available_; }

 private:
  Tier tier_;
  Mode mode_;
  int needed_;
  int available_;
};

// round(worm_count * phish_fraction) phish items, the rest legit, drawn
// without repeats from the plan's tier and mode and shuffled with
// xoshiro256** seeded by plan.seed.
std::vector<WormSpec> generate_level_set(const Corpus& c, const LevelPlan& plan);

int phish_count(const LevelPlan& plan);

}  // namespace phishpond::corpus
