#include "url_oracle.hpp"

namespace oracle {

namespace {

bool alpha(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool digit(unsigned char c) { return c >= '0' && c <= '9'; }
char lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }
bool space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

enum class St { Scheme, Sep1, Sep2, Authority, Path, Query, Fragment };

}  // namespace

bool dotted_quad(const std::string& host) {
  int parts = 0;
  int digits = 0;
  int value = 0;
  for (std::size_t i = 0; i <= host.size(); ++i) {
    if (i == host.size() || host[i] == '.') {
      if (digits == 0 || value > 255) return false;
      ++parts;
      digits = 0;
      value = 0;
      continue;
    }
    if (!digit(static_cast<unsigned char>(host[i])) || ++digits > 3) return false;
    value = value * 10 + (host[i] - '0');
  }
  return parts == 4;
}

std::optional<UriParts> scan_uri(std::string_view raw) {
  std::size_t b = 0;
  std::size_t e = raw.size();
  while (b < e && space(raw[b])) ++b;
  while (e > b && space(raw[e - 1])) --e;
  const std::string_view s = raw.substr(b, e - b);

  // The separator is the first "://" anywhere; everything before it must be a
  // scheme, so locate it up front rather than stopping at the first colon.
  const auto sep = s.find("://");
  if (sep == std::string_view::npos || sep == 0) return std::nullopt;

  UriParts u;
  std::string authority;
  St st = St::Scheme;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    const auto uc = static_cast<unsigned char>(c);
    switch (st) {
      case St::Scheme:
        if (i == sep) {
          st = St::Sep1;
          break;
        }
        if (i == 0 ? !alpha(uc) : !(alpha(uc) || digit(uc) || c == '+' || c == '-' || c == '.'))
          return std::nullopt;
        u.scheme.push_back(lower(c));
        break;
      case St::Sep1:
        st = St::Sep2;
        break;
      case St::Sep2:
        st = St::Authority;
        break;
      case St::Authority:
        if (c == '/') {
          st = St::Path;
          u.path.push_back(c);
        } else if (c == '?') {
          st = St::Query;
          u.query.emplace();
        } else if (c == '#') {
          st = St::Fragment;
          u.fragment.emplace();
        } else {
          authority.push_back(c);
        }
        break;
      case St::Path:
        if (c == '?') {
          st = St::Query;
          u.query.emplace();
        } else if (c == '#') {
          st = St::Fragment;
          u.fragment.emplace();
        } else {
          u.path.push_back(c);
        }
        break;
      case St::Query:
        if (c == '#') {
          st = St::Fragment;
          u.fragment.emplace();
        } else {
          u.query->push_back(c);
        }
        break;
      case St::Fragment:
        u.fragment->push_back(c);
        break;
    }
  }

  // Authority: the last '@' ends userinfo, then the last ':' starts the port.
  std::string hostport = authority;
  for (std::size_t i = authority.size(); i-- > 0;) {
    if (authority[i] == '@') {
      u.userinfo = authority.substr(0, i);
      hostport = authority.substr(i + 1);
      break;
    }
  }
  if (!hostport.empty() && hostport[0] == '[') return std::nullopt;
  std::string host = hostport;
  for (std::size_t i = hostport.size(); i-- > 0;) {
    if (hostport[i] == ':') {
      std::string port = hostport.substr(i + 1);
      for (char c : port)
        if (!digit(static_cast<unsigned char>(c))) return std::nullopt;
      u.port = port;
      host = hostport.substr(0, i);
      break;
    }
  }
  if (host.empty()) return std::nullopt;
  char prev = '.';
  for (char c : host) {
    const auto uc = static_cast<unsigned char>(c);
    const bool ok = alpha(uc) || digit(uc) || c == '-' || c == '_' || c == '.' || c == '%' || uc >= 0x80;
    if (!ok) return std::nullopt;
    if (c == '.' && prev == '.') return std::nullopt;
    prev = c;
    u.host.push_back(lower(c));
  }
  if (prev == '.') return std::nullopt;
  return u;
}

std::string registrable(const std::string& host, const std::set<std::string, std::less<>>& suffixes) {
  if (dotted_quad(host)) return {};
  std::size_t labels = 1;
  for (char c : host) labels += c == '.';
  // Largest number of trailing labels that forms a listed suffix; one label
  // when none does.
  std::size_t best = 1;
  for (const auto& suffix : suffixes) {
    if (suffix.size() > host.size()) continue;
    if (host.compare(host.size() - suffix.size(), suffix.size(), suffix) != 0) continue;
    if (suffix.size() < host.size() && host[host.size() - suffix.size() - 1] != '.') continue;
    std::size_t n = 1;
    for (char c : suffix) n += c == '.';
    if (n > best) best = n;
  }
  if (labels <= best) return host;
  std::size_t dots = 0;
  for (std::size_t i = host.size(); i-- > 0;) {
    if (host[i] == '.' && ++dots == best + 1) return host.substr(i + 1);
  }
  return host;
}

std::vector<std::string> subdomains(const std::string& host, const std::string& reg) {
  std::vector<std::string> out;
  if (reg.empty() || reg.size() >= host.size()) return out;
  const std::string head = host.substr(0, host.size() - reg.size() - 1);
  std::string label;
  for (char c : head) {
    if (c == '.') {
      out.push_back(label);
      label.clear();
    } else {
      label.push_back(c);
    }
  }
  out.push_back(label);
  return out;
}

}  // namespace oracle
