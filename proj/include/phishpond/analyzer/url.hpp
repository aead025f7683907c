#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace phishpond::analyzer {

// Public suffixes used for registrable-domain extraction. Deliberately small
// and offline: the built-in entries plus whatever the cue config adds. A host
// whose last label is not covered falls back to the implicit one-label rule.
class SuffixTable {
 public:
  SuffixTable();
  explicit SuffixTable(const std::vector<std::string>& extra);

  void add(std::string suffix);
  bool contains(std::string_view suffix) const;
  const std::set<std::string, std::less<>>& entries() const { return entries_; }

  // eTLD+1 of a lowercase domain name. Returns the whole host when it has no
  // label beyond its suffix.
  std::string registrable_domain(std::string_view host) const;

 private:
  std::set<std::string, std::less<>> entries_;
};

enum class Scheme { Http, Https, Other };

struct IpAddress {
  std::string text;
  bool operator==(const IpAddress&) const = default;
};

struct DomainName {
  std::string text;
  bool operator==(const DomainName&) const = default;
};

using HostKind = std::variant<IpAddress, DomainName>;

struct ParsedUrl {
  Scheme scheme = Scheme::Other;
  std::string scheme_text;  // lowercased
  std::optional<std::string> userinfo;
  HostKind host;
  std::optional<std::string> port;
  std::vector<std::string> subdomain_labels;
  std::string registrable_domain;  // empty iff host is an IP address
  std::string path;
  std::optional<std::string> query;
  std::optional<std::string> fragment;

  bool is_ip() const { return std::holds_alternative<IpAddress>(host); }
  const std::string& host_text() const;

  // Normalized form: lowercased scheme and host, everything else verbatim.
  std::string serialize() const;

  bool operator==(const ParsedUrl&) const = default;
};

// Splits scheme://[userinfo@]host[:port][/path][?query][#fragment].
// Throws Error(MalformedUrl) without a scheme separator, with an empty or
// invalid host, or for bracketed IPv6 literals.
ParsedUrl parse_url(std::string_view raw, const SuffixTable& suffixes);
ParsedUrl parse_url(std::string_view raw);

// Four dot-separated decimal octets, each 0-255 with 1-3 digits.
bool is_dotted_quad(std::string_view host);

std::string ascii_lower(std::string_view s);

}  // namespace phishpond::analyzer
