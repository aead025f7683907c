#include "phishpond/analyzer/lexicon.hpp"

#include <algorithm>
#include <set>

#include "phishpond/error.hpp"

namespace phishpond::analyzer {

bool Brand::owns(std::string_view registrable) const {
  return std::find(domains.begin(), domains.end(), registrable) != domains.end();
}

BrandLexicon::BrandLexicon(std::vector<Brand> brands, const SuffixTable& suffixes) {
  std::set<std::string> ids;
  for (auto& b : brands) {
    if (b.id.empty()) throw Error(ErrorCode::InvalidConfig, "brand with empty id");
    if (!ids.insert(b.id).second) throw Error(ErrorCode::InvalidConfig, "duplicate brand id " + b.id);
    if (b.domains.empty()) throw Error(ErrorCode::InvalidConfig, "brand " + b.id + " has no domains");
    for (auto& d : b.domains) {
      d = ascii_lower(d);
      ParsedUrl probe;
      try {
        probe = parse_url("https://" + d + "/", suffixes);
      } catch (const Error&) {
        throw Error(ErrorCode::InvalidConfig, "brand " + b.id + ": invalid domain " + d);
      }
      if (probe.is_ip() || probe.registrable_domain != d)
        throw Error(ErrorCode::InvalidConfig,
                    "brand " + b.id + ": " + d + " is not a registrable domain");
    }
    for (auto& t : b.tokens) t = ascii_lower(t);
    b.tokens.erase(std::remove(b.tokens.begin(), b.tokens.end(), std::string{}), b.tokens.end());
  }
  brands_ = std::move(brands);
}

const Brand* BrandLexicon::find(std::string_view id) const {
  for (const auto& b : brands_)
    if (b.id == id) return &b;
  return nullptr;
}

}  // namespace phishpond::analyzer
