#include <gtest/gtest.h>

#include "oracles/url_oracle.hpp"
#include "phishpond/analyzer/url.hpp"
#include "phishpond/error.hpp"
#include "phishpond/prng.hpp"
#include "world.hpp"

using namespace phishpond;
using namespace phishpond::analyzer;

namespace {

ErrorCode parse_error(std::string_view raw) {
  try {
    parse_url(raw);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error for " << raw;
  return ErrorCode::NotFound;
}

}  // namespace

TEST(ParseUrl, IpHostUrl) {
  const auto u = parse_url("http://81.153.192.106/www.hsbc.co.uk");
  EXPECT_EQ(u.scheme, Scheme::Http);
  ASSERT_TRUE(u.is_ip());
  EXPECT_EQ(u.host_text(), "81.153.192.106");
  EXPECT_EQ(u.path, "/www.hsbc.co.uk");
  EXPECT_TRUE(u.registrable_domain.empty());
  EXPECT_TRUE(u.subdomain_labels.empty());
}

TEST(ParseUrl, CanonicalHsbc) {
  const auto u = parse_url("https://www.hsbc.co.uk/");
  EXPECT_EQ(u.scheme, Scheme::Https);
  EXPECT_FALSE(u.is_ip());
  EXPECT_EQ(u.registrable_domain, "hsbc.co.uk");
  EXPECT_EQ(u.subdomain_labels, std::vector<std::string>{"www"});
  EXPECT_EQ(u.path, "/");
}

TEST(ParseUrl, UserinfoAndQuery) {
  const auto u = parse_url("http://user@hsbc-secure.com/login?x=1");
  EXPECT_EQ(u.userinfo, "user");
  EXPECT_FALSE(u.is_ip());
  EXPECT_EQ(u.registrable_domain, "hsbc-secure.com");
  EXPECT_EQ(u.path, "/login");
  EXPECT_EQ(u.query, "x=1");
  EXPECT_FALSE(u.fragment);
}

TEST(ParseUrl, PortFragmentAndCase) {
  const auto u = parse_url("HTTPS://Mail.Example.CO.UK:8443/a/b?q#frag");
  EXPECT_EQ(u.scheme_text, "https");
  EXPECT_EQ(u.host_text(), "mail.example.co.uk");
  EXPECT_EQ(u.port, "8443");
  EXPECT_EQ(u.registrable_domain, "example.co.uk");
  EXPECT_EQ(u.fragment, "frag");
  EXPECT_EQ(u.serialize(), "https://mail.example.co.uk:8443/a/b?q#frag");
}

TEST(ParseUrl, OctetRange) {
  EXPECT_TRUE(is_dotted_quad("0.0.0.0"));
  EXPECT_TRUE(is_dotted_quad("255.255.255.255"));
  EXPECT_FALSE(is_dotted_quad("256.1.1.1"));
  EXPECT_FALSE(is_dotted_quad("1.2.3"));
  EXPECT_FALSE(is_dotted_quad("1.2.3.4.5"));
  EXPECT_FALSE(is_dotted_quad("0001.2.3.4"));
  EXPECT_FALSE(parse_url("http://256.1.1.1/").is_ip());
}

TEST(ParseUrl, MalformedInputs) {
  for (const char* raw : {"", "   ", "www.google.com", "https://", "https:///x", "https://[::1]/",
                          "1http://x.com", "https://a..b.com", "https://x.com:12z/", "https://exa mple.com"})
    EXPECT_EQ(parse_error(raw), ErrorCode::MalformedUrl) << raw;
}

TEST(SuffixTable, LongestSuffixWins) {
  SuffixTable t({"gov.uk"});
  EXPECT_EQ(t.registrable_domain("www.hmrc.gov.uk"), "hmrc.gov.uk");
  EXPECT_EQ(t.registrable_domain("a.b.example.com"), "example.com");
  EXPECT_EQ(t.registrable_domain("co.uk"), "co.uk");
  EXPECT_EQ(t.registrable_domain("localhost"), "localhost");
  EXPECT_EQ(t.registrable_domain("x.example"), "x.example");
}

// Random strings over a URL-ish alphabet: every split must agree with the
// character-scan oracle, including which inputs are rejected.
TEST(ParseUrl, AgreesWithScanOracle) {
  const auto& suffixes = testworld::world().rules.cues.suffixes;
  const std::string alphabet = "abcHS019.-_:/@?#%[] \xc3\xa9";
  const std::vector<std::string> stems = {"http://", "https://", "ftp://", "Http://", "://", "h-t+p://", ""};
  Xoshiro256 rng(2024);
  int accepted = 0;
  for (int i = 0; i < 20000; ++i) {
    std::string raw = stems[rng.below(stems.size())];
    const auto n = rng.below(24);
    for (std::size_t k = 0; k < n; ++k) raw.push_back(alphabet[rng.below(alphabet.size())]);
    if (rng.below(4) == 0) raw = "www.hsbc.co.uk." + raw;

    const auto want = oracle::scan_uri(raw);
    std::optional<ParsedUrl> got;
    try {
      got = parse_url(raw, suffixes);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::MalformedUrl);
    }
    ASSERT_EQ(want.has_value(), got.has_value()) << "'" << raw << "'";
    if (!want) continue;
    ++accepted;
    ASSERT_EQ(got->scheme_text, want->scheme) << raw;
    ASSERT_EQ(got->userinfo, want->userinfo) << raw;
    ASSERT_EQ(got->host_text(), want->host) << raw;
    ASSERT_EQ(got->port, want->port) << raw;
    ASSERT_EQ(got->path, want->path) << raw;
    ASSERT_EQ(got->query, want->query) << raw;
    ASSERT_EQ(got->fragment, want->fragment) << raw;
    ASSERT_EQ(got->is_ip(), oracle::dotted_quad(want->host)) << raw;
    const auto reg = oracle::registrable(want->host, suffixes.entries());
    ASSERT_EQ(got->registrable_domain, reg) << raw;
    ASSERT_EQ(got->subdomain_labels, oracle::subdomains(want->host, reg)) << raw;
  }
  EXPECT_GT(accepted, 1000);
}

TEST(ParseUrl, RegistrableAgreesWithOracleOnHosts) {
  const auto& suffixes = testworld::world().rules.cues.suffixes;
  const std::vector<std::string> labels = {"www", "co", "uk", "com", "gov", "hsbc", "a", "org", "nhs", "ac"};
  Xoshiro256 rng(7);
  for (int i = 0; i < 5000; ++i) {
    std::string host;
    const auto n = 1 + rng.below(5);
    for (std::size_t k = 0; k < n; ++k) host += (k ? "." : "") + labels[rng.below(labels.size())];
    ASSERT_EQ(suffixes.registrable_domain(host), oracle::registrable(host, suffixes.entries())) << host;
  }
}
