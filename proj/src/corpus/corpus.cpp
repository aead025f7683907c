#include "phishpond/corpus/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "phishpond/codec.hpp"
#include "phishpond/config_io.hpp"
#include "phishpond/kernels/batch.hpp"
#include "phishpond/prng.hpp"

namespace phishpond::corpus {

namespace {

using codec::json;

// Line of each object that is a direct element of the record array, i.e. the
// top-level array or the array one level inside the top-level object.
std::vector<int> record_lines(std::string_view text) {
  std::vector<int> lines;
  std::vector<char> stack;
  int line = 1;
  bool in_string = false;
  bool escaped = false;
  for (char c : text) {
    if (c == '\n') ++line;
    if (in_string) {
      if (escaped) escaped = false;
      else if (c == '\\') escaped = true;
      else if (c == '"') in_string = false;
      continue;
    }
    switch (c) {
      case '"':
        in_string = true;
        break;
      case '{':
        if (!stack.empty() && stack.back() == '[' &&
            (stack.size() == 1 || (stack.size() == 2 && stack.front() == '{')))
          lines.push_back(line);
        stack.push_back('{');
        break;
      case '[':
        stack.push_back('[');
        break;
      case '}':
      case ']':
        if (!stack.empty()) stack.pop_back();
        break;
      default:
        break;
    }
  }
  return lines;
}

int line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<long>(offset), '\n'));
}

}  // namespace

std::string_view to_string(Finding::Kind k) {
  switch (k) {
    case Finding::Kind::LabelMismatch: return "label_mismatch";
    case Finding::Kind::Unlearnable: return "unlearnable";
    case Finding::Kind::TierViolation: return "tier_violation";
    case Finding::Kind::Coverage: return "coverage";
  }
  return "unknown";
}

Corpus load_corpus(std::string_view bytes) {
  json doc;
  try {
    doc = json::parse(bytes.begin(), bytes.end());
  } catch (const json::parse_error& e) {
    throw ParseError(line_of_offset(bytes, e.byte == 0 ? 0 : e.byte - 1), e.what());
  }

  Corpus corpus;
  const json* records = &doc;
  if (doc.is_object()) {
    for (const auto& [key, _] : doc.items()) {
      if (key != "version" && key != "lexicon" && key != "worms")
        throw ParseError(1, "unknown top-level field " + key);
    }
    try {
      corpus.version = codec::optional_string(doc, "version", corpus.version);
      corpus.lexicon_ref = codec::optional_string(doc, "lexicon", corpus.lexicon_ref);
      records = &codec::require(doc, "worms");
    } catch (const codec::CodecError& e) {
      throw ParseError(1, e.what());
    }
  }
  if (!records->is_array()) throw ParseError(1, "worm records must be a JSON array");
  if (records->empty()) throw ParseError(1, "corpus has no worms");

  const auto lines = record_lines(bytes);
  std::set<std::string> ids;
  static const analyzer::SuffixTable kSuffixes;
  for (std::size_t i = 0; i < records->size(); ++i) {
    const int line = i < lines.size() ? lines[i] : 1;
    WormSpec worm;
    try {
      worm = codec::worm_from_json((*records)[i]);
    } catch (const codec::CodecError& e) {
      throw ParseError(line, e.what());
    }
    if (const auto* url = worm.url()) {
      try {
        (void)analyzer::parse_url(*url, kSuffixes);
      } catch (const Error& e) {
        throw ParseError(line, e.detail());
      }
    }
    if (!ids.insert(worm.id).second) throw Error(ErrorCode::DuplicateId, worm.id);
    corpus.worms.push_back(std::move(worm));
  }
  return corpus;
}

Corpus load_corpus_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::NotFound, "cannot read corpus " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_corpus(buf.str());
}

const Corpus& shipped_corpus() {
  static const Corpus kCorpus = load_corpus(embedded_file("corpus.json"));
  return kCorpus;
}

analyzer::Verdict analyze_worm(const WormSpec& w, const analyzer::Analyzer& a) {
  if (const auto* url = w.url()) return a.analyze_url(*url);
  return a.analyze_email(*w.email());
}

ValidationReport validate_corpus(const Corpus& c, const analyzer::Analyzer& a) {
  ValidationReport report;
  const auto verdicts = kernels::analyze_worms(c.worms, a);
  const auto& cfg = a.config();
  const analyzer::Weight strong{500};
  const analyzer::Weight subtle_max{400};

  for (std::size_t i = 0; i < c.worms.size(); ++i) {
    const auto& w = c.worms[i];
    const auto& v = verdicts[i];
    if (w.truth == Label::Phish && v.cues.empty()) {
      report.findings.push_back({Finding::Kind::Unlearnable, w.id,
                                 "unlearnable item: phish worm carries no cue"});
    } else if (w.truth != v.label) {
      std::ostringstream msg;
      msg << "labelled " << to_string(w.truth) << " but analyzer says " << to_string(v.label)
          << " (risk " << v.risk_score() << ")";
      report.findings.push_back({Finding::Kind::LabelMismatch, w.id, msg.str()});
    }
    if (w.truth != Label::Phish) continue;
    if (w.tier == Tier::Beginner) {
      const bool has_strong = std::any_of(v.cues.begin(), v.cues.end(), [&](const analyzer::Cue& cue) {
        return cfg.weight_of(cue.kind) >= strong;
      });
      if (!has_strong)
        report.findings.push_back({Finding::Kind::TierViolation, w.id,
                                   "beginner phish worm needs a cue of weight >= 0.5"});
    } else if (w.tier == Tier::Advanced) {
      for (const auto& cue : v.cues) {
        const bool subtle = cfg.weight_of(cue.kind) <= subtle_max ||
                            cue.kind == analyzer::CueKind::LookalikeDomain ||
                            cue.kind == analyzer::CueKind::FakeLink;
        if (!subtle) {
          report.findings.push_back({Finding::Kind::TierViolation, w.id,
                                     "advanced phish worm carries an obvious cue " +
                                         std::string(analyzer::to_string(cue.kind))});
          break;
        }
      }
    }
  }

  std::set<Tier> used;
  for (const auto& w : c.worms) used.insert(w.tier);
  for (Tier t : used) {
    for (Mode m : {Mode::Url, Mode::Email}) {
      for (Label l : {Label::Legit, Label::Phish}) {
        const bool present = std::any_of(c.worms.begin(), c.worms.end(), [&](const WormSpec& w) {
          return w.tier == t && w.mode == m && w.truth == l;
        });
        if (!present)
          report.findings.push_back({Finding::Kind::Coverage, {},
                                     std::string(to_string(t)) + " tier has no " +
                                         std::string(to_string(l)) + " " +
                                         std::string(to_string(m)) + " worm"});
      }
    }
  }
  return report;
}

InsufficientCorpus::InsufficientCorpus(Tier tier, Mode mode, int needed, int available)
    : Error(ErrorCode::InsufficientCorpus,
            std::string(to_string(tier)) + "/" + std::string(to_string(mode)) + " needs " +
                std::to_string(needed) + " worms, corpus has " + std::to_string(available)),
      tier_(tier),
      mode_(mode),
      needed_(needed),
      available_(available) {}

int phish_count(const LevelPlan& plan) {
  return static_cast<int>(std::lround(plan.worm_count * plan.phish_fraction));
}

std::vector<WormSpec> generate_level_set(const Corpus& c, const LevelPlan& plan) {
  std::vector<const WormSpec*> phish;
  std::vector<const WormSpec*> legit;
  for (const auto& w : c.worms) {
    if (w.tier != plan.level || w.mode != plan.mode) continue;
    (w.truth == Label::Phish ? phish : legit).push_back(&w);
  }
  const int want_phish = phish_count(plan);
  const int want_legit = plan.worm_count - want_phish;
  const int available = static_cast<int>(phish.size() + legit.size());
  if (available < plan.worm_count)
    throw InsufficientCorpus(plan.level, plan.mode, plan.worm_count, available);
  if (static_cast<int>(phish.size()) < want_phish)
    throw InsufficientCorpus(plan.level, plan.mode, want_phish, static_cast<int>(phish.size()));
  if (static_cast<int>(legit.size()) < want_legit)
    throw InsufficientCorpus(plan.level, plan.mode, want_legit, static_cast<int>(legit.size()));

  Xoshiro256 rng(plan.seed);
  // Partial Fisher-Yates: the first `k` slots become a uniform sample.
  auto sample = [&rng](std::vector<const WormSpec*>& pool, int k) {
    for (int i = 0; i < k; ++i) {
      const auto j = i + static_cast<std::size_t>(rng.below(pool.size() - static_cast<std::size_t>(i)));
      std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    }
    pool.resize(static_cast<std::size_t>(k));
  };
  sample(phish, want_phish);
  sample(legit, want_legit);

  std::vector<const WormSpec*> set = phish;
  set.insert(set.end(), legit.begin(), legit.end());
  for (std::size_t i = set.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(set[i - 1], set[j]);
  }

  std::vector<WormSpec> out;
  out.reserve(set.size());
  for (const auto* w : set) out.push_back(*w);
  return out;
}

}  // namespace phishpond::corpus
