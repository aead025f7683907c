#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "phishpond/analyzer/cue.hpp"
#include "phishpond/analyzer/email.hpp"
#include "phishpond/analyzer/lexicon.hpp"
#include "phishpond/analyzer/url.hpp"

namespace phishpond::analyzer {

struct CueConfig {
  std::map<CueKind, Weight> weights;
  Weight threshold{500};
  int max_subdomains = 3;
  std::vector<std::string> dangerous_extensions;
  SuffixTable suffixes;
  PhraseLexicon urgency;
  SalutationLexicon salutations;

  // Throws Error(UnknownCueKind) when `kind` has no configured weight.
  Weight weight_of(CueKind kind) const;
};

// Cue rules. Each function emits at most one cue per kind, in kind order.
CueSet extract_url_cues(const ParsedUrl& url, const BrandLexicon& lex, const CueConfig& cfg);
CueSet extract_email_cues(const EmailMessage& m, const BrandLexicon& lex, const CueConfig& cfg);

Verdict score(const CueSet& cues, const CueConfig& cfg);

// Tip bound to the heaviest cue (ties go to the earlier kind).
TeacherTip tip_for(const CueSet& cues);
std::string_view tip_text(CueKind kind);
extern const std::string_view kNoCueTip;

// Folding used by lookalike detection: 0->o 1->l 3->e 4->a 5->s 7->t.
std::string fold_lookalike(std::string_view s);
// Optimal-string-alignment (restricted Damerau-Levenshtein) distance.
std::size_t osa_distance(std::string_view a, std::string_view b);

// Domain tokens a link's display text claims to point at, with the identity
// they compare by (registrable domain, or the address for IP hosts).
struct ClaimedDomain {
  std::string_view fragment;
  std::string identity;
};
std::vector<ClaimedDomain> claimed_domains(std::string_view display_text, const SuffixTable& s);

// One analyzer instance bundles the config and lexicon every rule needs.
class Analyzer {
 public:
  Analyzer(CueConfig cfg, BrandLexicon lex);

  const CueConfig& config() const { return cfg_; }
  const BrandLexicon& lexicon() const { return lex_; }

  ParsedUrl parse(std::string_view raw) const { return parse_url(raw, cfg_.suffixes); }
  Verdict analyze_url(std::string_view raw) const;
  Verdict analyze_email(const EmailMessage& m) const;

 private:
  CueConfig cfg_;
  BrandLexicon lex_;
};

}  // namespace phishpond::analyzer
