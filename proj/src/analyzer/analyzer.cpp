#include "phishpond/analyzer/analyzer.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "phishpond/error.hpp"

namespace phishpond::analyzer {

const std::string_view kNoCueTip =
    "No suspicious features found \xE2\x80\x94 compare against the address you know";

namespace {

bool is_alnum_byte(char ch) {
  const auto c = static_cast<unsigned char>(ch);
  return std::isalnum(c) || c >= 0x80;
}

bool ieq(char a, char b) {
  return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
}

// First case-insensitive occurrence of `token` in `text` bounded by
// non-alphanumerics or the ends of `text`.
std::optional<std::string_view> find_bounded(std::string_view text, std::string_view token) {
  if (token.empty() || token.size() > text.size()) return std::nullopt;
  for (std::size_t i = 0; i + token.size() <= text.size(); ++i) {
    if (!std::equal(token.begin(), token.end(), text.begin() + i, ieq)) continue;
    if (i > 0 && is_alnum_byte(text[i - 1])) continue;
    const auto end = i + token.size();
    if (end < text.size() && is_alnum_byte(text[end])) continue;
    return text.substr(i, token.size());
  }
  return std::nullopt;
}

std::vector<std::string_view> host_labels(std::string_view host) {
  std::vector<std::string_view> labels;
  std::size_t start = 0;
  for (;;) {
    const auto dot = host.find('.', start);
    labels.push_back(host.substr(start, dot == std::string_view::npos ? dot : dot - start));
    if (dot == std::string_view::npos) return labels;
    start = dot + 1;
  }
}

class CueSink {
 public:
  explicit CueSink(const CueConfig& cfg) : cfg_(cfg) {}

  void emit(CueKind kind, std::string_view evidence) {
    const auto it = cfg_.weights.find(kind);
    cues_.push_back(Cue{kind, it == cfg_.weights.end() ? Weight{} : it->second,
                        std::string(evidence)});
  }
  CueSet take() { return std::move(cues_); }

 private:
  const CueConfig& cfg_;
  CueSet cues_;
};

std::string link_target_identity(std::string_view target, const SuffixTable& suffixes) {
  try {
    const auto url = parse_url(target, suffixes);
    return url.is_ip() ? url.host_text() : url.registrable_domain;
  } catch (const Error&) {
    return {};
  }
}

std::string sender_registrable(std::string_view address, const SuffixTable& suffixes) {
  const auto at = address.rfind('@');
  if (at == std::string_view::npos) return {};
  try {
    const auto url = parse_url("mailto://" + std::string(address.substr(at + 1)) + "/", suffixes);
    return url.is_ip() ? url.host_text() : url.registrable_domain;
  } catch (const Error&) {
    return {};
  }
}

}  // namespace

Weight CueConfig::weight_of(CueKind kind) const {
  const auto it = weights.find(kind);
  if (it == weights.end())
    throw Error(ErrorCode::UnknownCueKind, "no weight configured for " + std::string(to_string(kind)));
  return it->second;
}

std::string fold_lookalike(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    switch (c) {
      case '0': c = 'o'; break;
      case '1': c = 'l'; break;
      case '3': c = 'e'; break;
      case '4': c = 'a'; break;
      case '5': c = 's'; break;
      case '7': c = 't'; break;
      default: break;
    }
  }
  return out;
}

std::size_t osa_distance(std::string_view a, std::string_view b) {
  const std::size_t n = a.size();
  const std::size_t m = b.size();
  std::vector<std::size_t> d((n + 1) * (m + 1));
  auto at = [m, &d](std::size_t i, std::size_t j) -> std::size_t& { return d[i * (m + 1) + j]; };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      at(i, j) = std::min({at(i - 1, j) + 1, at(i, j - 1) + 1, at(i - 1, j - 1) + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1])
        at(i, j) = std::min(at(i, j), at(i - 2, j - 2) + 1);
    }
  }
  return at(n, m);
}

std::vector<ClaimedDomain> claimed_domains(std::string_view display, const SuffixTable& suffixes) {
  std::vector<ClaimedDomain> out;
  std::size_t pos = 0;
  while (pos < display.size()) {
    const auto b = display.find_first_not_of(" \t\r\n", pos);
    if (b == std::string_view::npos) break;
    auto e = display.find_first_of(" \t\r\n", b);
    if (e == std::string_view::npos) e = display.size();
    pos = e;

    std::string_view token = display.substr(b, e - b);
    while (!token.empty() && std::string_view("([<\"'").find(token.front()) != std::string_view::npos)
      token.remove_prefix(1);
    while (!token.empty() && std::string_view(".,;:!?)]>\"'").find(token.back()) != std::string_view::npos)
      token.remove_suffix(1);
    if (token.empty() || token.find('@') != std::string_view::npos) continue;

    if (token.find("://") != std::string_view::npos) {
      try {
        const auto url = parse_url(token, suffixes);
        out.push_back({token, url.is_ip() ? url.host_text() : url.registrable_domain});
      } catch (const Error&) {
      }
      continue;
    }

    const std::string host = ascii_lower(token.substr(0, token.find_first_of("/?#:")));
    if (host.find('.') == std::string::npos) continue;
    const auto labels = host_labels(host);
    const bool well_formed = std::all_of(labels.begin(), labels.end(), [](std::string_view l) {
      return !l.empty() && std::all_of(l.begin(), l.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
      });
    });
    if (!well_formed) continue;
    if (is_dotted_quad(host)) {
      out.push_back({token, host});
      continue;
    }
    const auto tld = labels.back();
    if (tld.size() < 2 || !std::all_of(tld.begin(), tld.end(), [](char c) {
          return std::isalpha(static_cast<unsigned char>(c));
        }))
      continue;
    out.push_back({token, suffixes.registrable_domain(host)});
  }
  return out;
}

CueSet extract_url_cues(const ParsedUrl& url, const BrandLexicon& lex, const CueConfig& cfg) {
  CueSink sink(cfg);
  const std::string& host = url.host_text();

  if (url.is_ip()) sink.emit(CueKind::IpHost, host);

  [&] {
    for (auto label : host_labels(host)) {
      for (const auto& brand : lex.brands()) {
        for (const auto& token : brand.tokens) {
          if (label.size() <= token.size() + 1) continue;
          const bool leading = label.substr(0, token.size()) == token && label[token.size()] == '-';
          const bool trailing = label.substr(label.size() - token.size()) == token &&
                                label[label.size() - token.size() - 1] == '-';
          if (leading || trailing) {
            sink.emit(CueKind::BrandHyphen, label);
            return;
          }
        }
      }
    }
  }();

  [&] {
    for (const auto& brand : lex.brands()) {
      if (brand.owns(url.registrable_domain)) continue;
      for (const auto& token : brand.tokens) {
        for (const auto& label : url.subdomain_labels) {
          if (auto hit = find_bounded(label, token)) {
            sink.emit(CueKind::BrandInPathOrSubdomain, *hit);
            return;
          }
        }
        if (auto hit = find_bounded(url.path, token)) {
          sink.emit(CueKind::BrandInPathOrSubdomain, *hit);
          return;
        }
      }
    }
  }();

  if (url.userinfo) sink.emit(CueKind::UserinfoPresent, *url.userinfo + "@");
  if (url.scheme != Scheme::Https) sink.emit(CueKind::InsecureScheme, url.scheme_text);

  if (static_cast<int>(url.subdomain_labels.size()) >= cfg.max_subdomains) {
    std::string chain;
    for (const auto& l : url.subdomain_labels) chain += (chain.empty() ? "" : ".") + l;
    sink.emit(CueKind::ExcessiveSubdomains, chain);
  }

  if (!url.is_ip()) {
    const auto& reg = url.registrable_domain;
    const bool owned = std::any_of(lex.brands().begin(), lex.brands().end(),
                                   [&](const Brand& b) { return b.owns(reg); });
    if (!owned) {
      const auto folded = fold_lookalike(reg);
      [&] {
        for (const auto& brand : lex.brands()) {
          for (const auto& domain : brand.domains) {
            if (osa_distance(folded, fold_lookalike(domain)) <= 1) {
              sink.emit(CueKind::LookalikeDomain, reg);
              return;
            }
          }
        }
      }();
    }
  }
  return sink.take();
}

CueSet extract_email_cues(const EmailMessage& m, const BrandLexicon& lex, const CueConfig& cfg) {
  CueSink sink(cfg);

  if (cfg.salutations.matches(m.salutation)) sink.emit(CueKind::GenericSalutation, m.salutation);

  if (auto hit = cfg.urgency.find_in(m.subject)) {
    sink.emit(CueKind::UrgentRequest, *hit);
  } else if (auto body_hit = cfg.urgency.find_in(m.body)) {
    sink.emit(CueKind::UrgentRequest, *body_hit);
  }

  if (m.claimed_brand_logo) {
    const Brand* brand = lex.find(*m.claimed_brand_logo);
    const auto sender = sender_registrable(m.sender_address, cfg.suffixes);
    if (brand == nullptr || sender.empty() || !brand->owns(sender))
      sink.emit(CueKind::LogoSenderMismatch, m.sender_address);
  }

  [&] {
    for (const auto& link : m.links) {
      const auto target = link_target_identity(link.target_url, cfg.suffixes);
      for (const auto& claimed : claimed_domains(link.display_text, cfg.suffixes)) {
        if (claimed.identity != target) {
          sink.emit(CueKind::FakeLink, claimed.fragment);
          return;
        }
      }
    }
  }();

  for (const auto& attachment : m.attachments) {
    const auto dot = attachment.filename.rfind('.');
    if (dot == std::string::npos) continue;
    const auto ext = ascii_lower(std::string_view(attachment.filename).substr(dot + 1));
    if (std::find(cfg.dangerous_extensions.begin(), cfg.dangerous_extensions.end(), ext) !=
        cfg.dangerous_extensions.end()) {
      sink.emit(CueKind::SuspiciousAttachment, attachment.filename);
      break;
    }
  }
  return sink.take();
}

Verdict score(const CueSet& cues, const CueConfig& cfg) {
  Weight total;
  for (const auto& cue : cues) total = total + cfg.weight_of(cue.kind);
  Verdict v;
  v.cues = cues;
  v.risk = Weight{std::min<std::int32_t>(total.milli, 1000)};
  v.label = v.risk >= cfg.threshold ? Label::Phish : Label::Legit;
  return v;
}

std::string_view tip_text(CueKind kind) {
  switch (kind) {
    case CueKind::IpHost:
      return "website addresses associate with numbers in the front are generally scams";
    case CueKind::BrandHyphen:
      return "a company name followed by a hyphen in a URL is generally a scam";
    case CueKind::BrandInPathOrSubdomain:
      return "a company name in the path or in front of someone else's address does not make "
             "the site belong to that company";
    case CueKind::UserinfoPresent:
      return "anything written before an @ in a website address is ignored, the real address "
             "comes after it";
    case CueKind::InsecureScheme:
      return "genuine login pages use https and show the lock icon, be careful with plain http "
             "addresses";
    case CueKind::ExcessiveSubdomains:
      return "a long chain of dotted names in front of the real address is often used to hide "
             "where a link goes";
    case CueKind::LookalikeDomain:
      return "look at every letter: a swapped character such as 1 for l or 0 for o means the "
             "address is fake";
    case CueKind::GenericSalutation:
      return "phishing emails often contain generic salutation";
    case CueKind::UrgentRequest:
      return "emails associated with urgent requests are generally phishing emails";
    case CueKind::LogoSenderMismatch:
      return "a trusted company logo means nothing if the sender's address does not belong to "
             "that company";
    case CueKind::FakeLink:
      return "the text of a link can show one address while it takes you to another, check "
             "where it really goes";
    case CueKind::SuspiciousAttachment:
      return "unexpected attachments such as .exe, .scr or .zip files are generally malicious";
  }
  return kNoCueTip;
}

TeacherTip tip_for(const CueSet& cues) {
  const Cue* best = nullptr;
  for (const auto& cue : cues) {
    if (best == nullptr || cue.weight > best->weight ||
        (cue.weight == best->weight && cue.kind < best->kind))
      best = &cue;
  }
  if (best == nullptr) return TeacherTip{std::string(kNoCueTip), std::nullopt};
  return TeacherTip{std::string(tip_text(best->kind)), best->kind};
}

Analyzer::Analyzer(CueConfig cfg, BrandLexicon lex) : cfg_(std::move(cfg)), lex_(std::move(lex)) {}

Verdict Analyzer::analyze_url(std::string_view raw) const {
  return score(extract_url_cues(parse(raw), lex_, cfg_), cfg_);
}

Verdict Analyzer::analyze_email(const EmailMessage& m) const {
  return score(extract_email_cues(m, lex_, cfg_), cfg_);
}

}  // namespace phishpond::analyzer
