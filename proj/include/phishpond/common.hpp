#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>

namespace phishpond {

using Millis = std::chrono::milliseconds;

enum class Mode { Url, Email };
enum class Tier { Beginner, Intermediate, Advanced };
enum class Label { Legit, Phish };

inline constexpr std::array<Tier, 3> kTiers = {Tier::Beginner, Tier::Intermediate,
                                              Tier::Advanced};

constexpr std::size_t index_of(Tier t) { return static_cast<std::size_t>(t); }

constexpr std::optional<Tier> next_tier(Tier t) {
  switch (t) {
    case Tier::Beginner:
      return Tier::Intermediate;
    case Tier::Intermediate:
      return Tier::Advanced;
    case Tier::Advanced:
      return std::nullopt;
  }
  return std::nullopt;
}

std::string_view to_string(Mode m);
std::string_view to_string(Tier t);
std::string_view to_string(Label l);

std::optional<Mode> parse_mode(std::string_view s);
std::optional<Tier> parse_tier(std::string_view s);
std::optional<Label> parse_label(std::string_view s);

}  // namespace phishpond
