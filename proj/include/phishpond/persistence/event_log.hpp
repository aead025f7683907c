#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "phishpond/persistence/event.hpp"

namespace phishpond::persistence {

/// Append-only event log for one session. In memory, or backed by a JSONL
/// file that is flushed to stable storage (fsync) before append returns.
/// One writer per log; the type is move-only.
class EventLog {
 public:
  EventLog() = default;  // in memory
  // Creates the file; an existing file is StorageFailure, never truncated.
  static EventLog create(const std::filesystem::path& file);

  EventLog(EventLog&& other) noexcept;
  EventLog& operator=(EventLog&& other) noexcept;
  EventLog(const EventLog&) = delete;
  EventLog& operator=(const EventLog&) = delete;
  ~EventLog();

  // Throws Error(SequenceGap) unless e.seq is last_seq() + 1, and
  // Error(StorageFailure) if the write or sync fails. A failed append leaves
  // the in-memory events unchanged.
  void append(const SessionEvent& e);

  std::uint64_t last_seq() const { return events_.empty() ? 0 : events_.back().seq; }
  const std::vector<SessionEvent>& events() const { return events_; }
  const std::optional<std::filesystem::path>& file() const { return file_; }

  void close();

 private:
  std::vector<SessionEvent> events_;
  std::optional<std::filesystem::path> file_;
  int fd_ = -1;
};

// Reads a closed log. Throws Error(NotFound) or CorruptLog.
std::vector<SessionEvent> read_log_file(const std::filesystem::path& file);

}  // namespace phishpond::persistence
