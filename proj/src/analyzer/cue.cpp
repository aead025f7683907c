#include "phishpond/analyzer/cue.hpp"

#include <cctype>
#include <cmath>

#include "phishpond/error.hpp"

namespace phishpond::analyzer {

namespace {

constexpr std::array<std::string_view, 12> kCueNames = {
    "IpHost",          "BrandHyphen",       "BrandInPathOrSubdomain", "UserinfoPresent",
    "InsecureScheme",  "ExcessiveSubdomains", "LookalikeDomain",      "GenericSalutation",
    "UrgentRequest",   "LogoSenderMismatch", "FakeLink",              "SuspiciousAttachment",
};

bool is_word_byte(unsigned char c) { return std::isalnum(c) || c == '\'' || c >= 0x80; }
bool is_alnum_byte(unsigned char c) { return std::isalnum(c) || c >= 0x80; }

std::vector<std::string> parse_word_list(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b != std::string_view::npos) {
      const auto e = line.find_last_not_of(" \t\r");
      lines.emplace_back(line.substr(b, e - b + 1));
    }
    start = end + 1;
  }
  return lines;
}

bool match_words(const std::vector<std::string>& pattern, std::size_t pi,
                 const std::vector<std::string>& words, std::size_t wi) {
  if (pi == pattern.size()) return wi == words.size();
  if (pattern[pi] == "*") {
    for (std::size_t take = 1; wi + take <= words.size(); ++take)
      if (match_words(pattern, pi + 1, words, wi + take)) return true;
    return false;
  }
  return wi < words.size() && words[wi] == pattern[pi] && match_words(pattern, pi + 1, words, wi + 1);
}

}  // namespace

std::string_view to_string(CueKind k) { return kCueNames[static_cast<std::size_t>(k)]; }

std::optional<CueKind> parse_cue_kind(std::string_view s) {
  for (CueKind k : kAllCueKinds)
    if (to_string(k) == s) return k;
  return std::nullopt;
}

Weight Weight::from_double(double v) {
  if (!(v >= 0.0) || !std::isfinite(v))
    throw Error(ErrorCode::InvalidConfig, "weights must be finite and non-negative");
  return Weight{static_cast<std::int32_t>(std::lround(v * 1000.0))};
}

std::vector<std::string> normalize_words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_word_byte(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      words.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

SalutationLexicon::SalutationLexicon(const std::vector<std::string>& patterns) {
  for (const auto& p : patterns) {
    std::vector<std::string> words;
    std::size_t pos = 0;
    while (pos < p.size()) {
      const auto b = p.find_first_not_of(" \t", pos);
      if (b == std::string::npos) break;
      auto e = p.find_first_of(" \t", b);
      if (e == std::string::npos) e = p.size();
      const auto token = std::string_view(p).substr(b, e - b);
      if (token == "*") {
        words.emplace_back("*");
      } else {
        for (auto& w : normalize_words(token)) words.push_back(std::move(w));
      }
      pos = e;
    }
    if (!words.empty()) patterns_.push_back(std::move(words));
  }
}

SalutationLexicon SalutationLexicon::from_text(std::string_view text) {
  return SalutationLexicon(parse_word_list(text));
}

bool SalutationLexicon::matches(std::string_view salutation) const {
  const auto words = normalize_words(salutation);
  if (words.empty()) return false;
  for (const auto& p : patterns_)
    if (match_words(p, 0, words, 0)) return true;
  return false;
}

PhraseLexicon::PhraseLexicon(std::vector<std::string> phrases) {
  for (auto& p : phrases) {
    std::string joined;
    for (const auto& w : normalize_words(p)) {
      if (!joined.empty()) joined.push_back(' ');
      joined += w;
    }
    if (!joined.empty()) phrases_.push_back(std::move(joined));
  }
}

PhraseLexicon PhraseLexicon::from_text(std::string_view text) {
  return PhraseLexicon(parse_word_list(text));
}

std::optional<std::string_view> PhraseLexicon::find_in(std::string_view text) const {
  auto eq = [](char a, char b) {
    return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
  };
  for (const auto& phrase : phrases_) {
    const auto n = phrase.size();
    for (std::size_t i = 0; i + n <= text.size(); ++i) {
      bool hit = true;
      for (std::size_t j = 0; j < n && hit; ++j) hit = eq(text[i + j], phrase[j]);
      if (!hit) continue;
      if (i > 0 && is_alnum_byte(static_cast<unsigned char>(text[i - 1]))) continue;
      if (i + n < text.size() && is_alnum_byte(static_cast<unsigned char>(text[i + n]))) continue;
      return text.substr(i, n);
    }
  }
  return std::nullopt;
}

}  // namespace phishpond::analyzer
