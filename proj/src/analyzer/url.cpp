#include "phishpond/analyzer/url.hpp"

#include <algorithm>
#include <cctype>

#include "phishpond/error.hpp"

namespace phishpond::analyzer {

namespace {

const std::vector<std::string>& builtin_suffixes() {
  static const std::vector<std::string> kSuffixes = {"com", "org",   "net", "co.uk",
                                                     "ac.uk", "gov", "edu"};
  return kSuffixes;
}

std::vector<std::string_view> split_labels(std::string_view host) {
  std::vector<std::string_view> labels;
  std::size_t start = 0;
  for (;;) {
    const auto dot = host.find('.', start);
    labels.push_back(host.substr(start, dot == std::string_view::npos ? dot : dot - start));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return labels;
}

bool is_scheme_text(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
  });
}

bool is_host_char(char c) {
  const auto u = static_cast<unsigned char>(c);
  return std::isalnum(u) || c == '-' || c == '_' || c == '.' || c == '%' || u >= 0x80;
}

[[noreturn]] void malformed(std::string_view raw, const std::string& why) {
  throw Error(ErrorCode::MalformedUrl, why + " in '" + std::string(raw) + "'");
}

}  // namespace

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

SuffixTable::SuffixTable() : SuffixTable(std::vector<std::string>{}) {}

SuffixTable::SuffixTable(const std::vector<std::string>& extra) {
  for (const auto& s : builtin_suffixes()) entries_.insert(s);
  for (const auto& s : extra) add(s);
}

void SuffixTable::add(std::string suffix) {
  suffix = ascii_lower(suffix);
  while (!suffix.empty() && suffix.front() == '.') suffix.erase(suffix.begin());
  if (!suffix.empty()) entries_.insert(std::move(suffix));
}

bool SuffixTable::contains(std::string_view suffix) const {
  return entries_.find(suffix) != entries_.end();
}

std::string SuffixTable::registrable_domain(std::string_view host) const {
  const auto labels = split_labels(host);
  // Longest matching suffix wins; the last label alone is the fallback rule.
  std::size_t suffix_labels = 1;
  std::size_t offset = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const auto tail = host.substr(offset);
    if (contains(tail)) {
      suffix_labels = labels.size() - i;
      break;
    }
    offset += labels[i].size() + 1;
  }
  if (labels.size() <= suffix_labels) return std::string(host);
  std::size_t keep = suffix_labels + 1;
  std::size_t start = host.size();
  for (std::size_t i = 0; i < keep; ++i) {
    const auto& label = labels[labels.size() - 1 - i];
    start -= label.size();
    if (i + 1 < keep) start -= 1;
  }
  return std::string(host.substr(start));
}

bool is_dotted_quad(std::string_view host) {
  const auto parts = split_labels(host);
  if (parts.size() != 4) return false;
  for (auto part : parts) {
    if (part.empty() || part.size() > 3) return false;
    int value = 0;
    for (char c : part) {
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
      value = value * 10 + (c - '0');
    }
    if (value > 255) return false;
  }
  return true;
}

const std::string& ParsedUrl::host_text() const {
  return std::visit([](const auto& h) -> const std::string& { return h.text; }, host);
}

std::string ParsedUrl::serialize() const {
  std::string out = scheme_text + "://";
  if (userinfo) out += *userinfo + "@";
  out += host_text();
  if (port) out += ":" + *port;
  out += path;
  if (query) out += "?" + *query;
  if (fragment) out += "#" + *fragment;
  return out;
}

ParsedUrl parse_url(std::string_view raw, const SuffixTable& suffixes) {
  auto first = raw.find_first_not_of(" \t\r\n");
  auto last = raw.find_last_not_of(" \t\r\n");
  if (first == std::string_view::npos) malformed(raw, "empty input");
  const std::string_view text = raw.substr(first, last - first + 1);

  const auto sep = text.find("://");
  if (sep == std::string_view::npos) malformed(raw, "no scheme separator");
  const auto scheme = text.substr(0, sep);
  if (!is_scheme_text(scheme)) malformed(raw, "invalid scheme");

  ParsedUrl url;
  url.scheme_text = ascii_lower(scheme);
  url.scheme = url.scheme_text == "https"  ? Scheme::Https
               : url.scheme_text == "http" ? Scheme::Http
                                           : Scheme::Other;

  std::string_view rest = text.substr(sep + 3);
  const auto authority_end = rest.find_first_of("/?#");
  std::string_view authority = rest.substr(0, authority_end);
  rest = authority_end == std::string_view::npos ? std::string_view{} : rest.substr(authority_end);

  if (const auto at = authority.rfind('@'); at != std::string_view::npos) {
    url.userinfo = std::string(authority.substr(0, at));
    authority = authority.substr(at + 1);
  }
  if (!authority.empty() && authority.front() == '[') malformed(raw, "IPv6 literal host");
  if (const auto colon = authority.rfind(':'); colon != std::string_view::npos) {
    const auto port = authority.substr(colon + 1);
    if (!std::all_of(port.begin(), port.end(),
                     [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      malformed(raw, "invalid port");
    url.port = std::string(port);
    authority = authority.substr(0, colon);
  }
  if (authority.empty()) malformed(raw, "empty host");
  if (!std::all_of(authority.begin(), authority.end(), is_host_char))
    malformed(raw, "invalid host character");
  std::string host = ascii_lower(authority);
  for (auto label : split_labels(host))
    if (label.empty()) malformed(raw, "empty host label");

  if (const auto q = rest.find_first_of("?#"); q != std::string_view::npos) {
    url.path = std::string(rest.substr(0, q));
    rest = rest.substr(q);
  } else {
    url.path = std::string(rest);
    rest = {};
  }
  if (!rest.empty() && rest.front() == '?') {
    const auto hash = rest.find('#');
    url.query = std::string(rest.substr(1, hash == std::string_view::npos ? hash : hash - 1));
    rest = hash == std::string_view::npos ? std::string_view{} : rest.substr(hash);
  }
  if (!rest.empty() && rest.front() == '#') url.fragment = std::string(rest.substr(1));

  if (is_dotted_quad(host)) {
    url.host = IpAddress{std::move(host)};
    return url;
  }
  url.registrable_domain = suffixes.registrable_domain(host);
  if (url.registrable_domain.size() < host.size()) {
    const auto sub = std::string_view(host).substr(0, host.size() - url.registrable_domain.size() - 1);
    for (auto label : split_labels(sub)) url.subdomain_labels.emplace_back(label);
  }
  url.host = DomainName{std::move(host)};
  return url;
}

ParsedUrl parse_url(std::string_view raw) {
  static const SuffixTable kDefault;
  return parse_url(raw, kDefault);
}

}  // namespace phishpond::analyzer
