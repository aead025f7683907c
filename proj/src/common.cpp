#include "phishpond/common.hpp"

#include "phishpond/error.hpp"

namespace phishpond {

std::string_view to_string(Mode m) { return m == Mode::Url ? "url" : "email"; }

std::string_view to_string(Tier t) {
  switch (t) {
    case Tier::Beginner:
      return "beginner";
    case Tier::Intermediate:
      return "intermediate";
    case Tier::Advanced:
      return "advanced";
  }
  return "beginner";
}

std::string_view to_string(Label l) { return l == Label::Legit ? "legit" : "phish"; }

std::optional<Mode> parse_mode(std::string_view s) {
  if (s == "url") return Mode::Url;
  if (s == "email") return Mode::Email;
  return std::nullopt;
}

std::optional<Tier> parse_tier(std::string_view s) {
  for (Tier t : kTiers)
    if (to_string(t) == s) return t;
  return std::nullopt;
}

std::optional<Label> parse_label(std::string_view s) {
  if (s == "legit") return Label::Legit;
  if (s == "phish") return Label::Phish;
  return std::nullopt;
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedUrl: return "MalformedUrl";
    case ErrorCode::UnknownCueKind: return "UnknownCueKind";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::InsufficientCorpus: return "InsufficientCorpus";
    case ErrorCode::NoCurrentWorm: return "NoCurrentWorm";
    case ErrorCode::SessionNotActive: return "SessionNotActive";
    case ErrorCode::AlreadyHinted: return "AlreadyHinted";
    case ErrorCode::NotComplete: return "NotComplete";
    case ErrorCode::AlreadyAtTop: return "AlreadyAtTop";
    case ErrorCode::SessionStillActive: return "SessionStillActive";
    case ErrorCode::InvalidTimestamp: return "InvalidTimestamp";
    case ErrorCode::NoDecisions: return "NoDecisions";
    case ErrorCode::SequenceGap: return "SequenceGap";
    case ErrorCode::StorageFailure: return "StorageFailure";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::CorruptLog: return "CorruptLog";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::DuplicateSession: return "DuplicateSession";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

ParseError::ParseError(int line, const std::string& reason)
    : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + reason),
      line_(line) {}

CorruptLog::CorruptLog(std::int64_t seq, const std::string& reason)
    : Error(ErrorCode::CorruptLog, "seq " + std::to_string(seq) + ": " + reason),
      seq_(seq) {}

}  // namespace phishpond
