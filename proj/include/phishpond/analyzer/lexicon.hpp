#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "phishpond/analyzer/url.hpp"

namespace phishpond::analyzer {

struct Brand {
  std::string id;
  std::vector<std::string> domains;  // canonical registrable domains
  std::vector<std::string> tokens;   // lowercase name tokens, e.g. "hsbc"

  bool owns(std::string_view registrable) const;
  bool operator==(const Brand&) const = default;
};

class BrandLexicon {
 public:
  BrandLexicon() = default;

  // Throws Error(InvalidConfig) on duplicate ids or a canonical domain that is
  // not its own registrable domain under `suffixes`.
  BrandLexicon(std::vector<Brand> brands, const SuffixTable& suffixes);

  const std::vector<Brand>& brands() const { return brands_; }
  const Brand* find(std::string_view id) const;

  bool operator==(const BrandLexicon&) const = default;

 private:
  std::vector<Brand> brands_;
};

}  // namespace phishpond::analyzer
