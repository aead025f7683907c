#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phishpond/common.hpp"

namespace phishpond::analyzer {

enum class CueKind {
  IpHost,
  BrandHyphen,
  BrandInPathOrSubdomain,
  UserinfoPresent,
  InsecureScheme,
  ExcessiveSubdomains,
  LookalikeDomain,
  GenericSalutation,
  UrgentRequest,
  LogoSenderMismatch,
  FakeLink,
  SuspiciousAttachment,
};

inline constexpr std::array<CueKind, 12> kAllCueKinds = {
    CueKind::IpHost,          CueKind::BrandHyphen,         CueKind::BrandInPathOrSubdomain,
    CueKind::UserinfoPresent, CueKind::InsecureScheme,      CueKind::ExcessiveSubdomains,
    CueKind::LookalikeDomain, CueKind::GenericSalutation,   CueKind::UrgentRequest,
    CueKind::LogoSenderMismatch, CueKind::FakeLink,         CueKind::SuspiciousAttachment,
};

constexpr bool is_url_cue(CueKind k) { return k <= CueKind::LookalikeDomain; }
constexpr bool is_email_cue(CueKind k) { return !is_url_cue(k); }

std::string_view to_string(CueKind k);
std::optional<CueKind> parse_cue_kind(std::string_view s);

// Cue weights and risk scores are fixed-point thousandths so that sums and
// threshold comparisons are exact.
struct Weight {
  std::int32_t milli = 0;

  static Weight from_double(double v);
  double value() const { return milli / 1000.0; }

  auto operator<=>(const Weight&) const = default;
  Weight operator+(Weight o) const { return Weight{milli + o.milli}; }
};

struct Cue {
  CueKind kind;
  Weight weight;
  std::string evidence;

  bool operator==(const Cue&) const = default;
};

// At most one cue per kind, ordered by kind.
using CueSet = std::vector<Cue>;

struct Verdict {
  CueSet cues;
  Weight risk;  // min(1, sum of weights)
  Label label = Label::Legit;

  double risk_score() const { return risk.value(); }
  bool operator==(const Verdict&) const = default;
};

struct TeacherTip {
  std::string text;
  std::optional<CueKind> cue_kind;  // empty for the no-cue tip

  bool operator==(const TeacherTip&) const = default;
};

// Word-sequence patterns; `*` stands for one or more words. A salutation is
// generic when its normalized form matches some pattern in full.
class SalutationLexicon {
 public:
  SalutationLexicon() = default;
  explicit SalutationLexicon(const std::vector<std::string>& patterns);

  // Parses the word-list file format: one pattern per line, `#` comments.
  static SalutationLexicon from_text(std::string_view text);

  bool matches(std::string_view salutation) const;
  const std::vector<std::vector<std::string>>& patterns() const { return patterns_; }

 private:
  std::vector<std::vector<std::string>> patterns_;
};

// Case-insensitive phrases matched on alphanumeric word boundaries.
class PhraseLexicon {
 public:
  PhraseLexicon() = default;
  explicit PhraseLexicon(std::vector<std::string> phrases);

  static PhraseLexicon from_text(std::string_view text);

  // Original-case text of the first phrase occurrence in `text`.
  std::optional<std::string_view> find_in(std::string_view text) const;
  const std::vector<std::string>& phrases() const { return phrases_; }

 private:
  std::vector<std::string> phrases_;
};

// Lowercases and reduces everything but letters, digits and apostrophes to
// single spaces.
std::vector<std::string> normalize_words(std::string_view text);

}  // namespace phishpond::analyzer
