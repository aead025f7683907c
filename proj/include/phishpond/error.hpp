#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace phishpond {

enum class ErrorCode {
  MalformedUrl,
  UnknownCueKind,
  InvalidConfig,
  ParseError,
  DuplicateId,
  InsufficientCorpus,
  NoCurrentWorm,
  SessionNotActive,
  AlreadyHinted,
  NotComplete,
  AlreadyAtTop,
  SessionStillActive,
  InvalidTimestamp,
  NoDecisions,
  SequenceGap,
  StorageFailure,
  VersionMismatch,
  CorruptLog,
  NotFound,
  DuplicateSession,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

// Corpus and config files report the 1-based line of the offending record.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& reason);
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class CorruptLog : public Error {
 public:
  CorruptLog(std::int64_t seq, const std::string& reason);
  std::int64_t seq() const noexcept { return seq_; }

 private:
  std::int64_t seq_;
};

}  // namespace phishpond
