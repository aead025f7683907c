#include "phishpond/persistence/event_log.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <utility>

#include "phishpond/error.hpp"

namespace phishpond::persistence {

namespace {

Error storage_failure(const std::string& what) {
  return Error(ErrorCode::StorageFailure, what + ": " + std::strerror(errno));
}

void write_all(int fd, const std::string& bytes) {
  std::size_t done = 0;
  while (done < bytes.size()) {
    const auto n = ::write(fd, bytes.data() + done, bytes.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw storage_failure("write to session log failed");
    }
    done += static_cast<std::size_t>(n);
  }
}

}  // namespace

EventLog EventLog::create(const std::filesystem::path& file) {
  EventLog log;
  log.fd_ = ::open(file.c_str(), O_WRONLY | O_CREAT | O_EXCL | O_APPEND | O_CLOEXEC, 0644);
  if (log.fd_ < 0) throw storage_failure("cannot create " + file.string());
  log.file_ = file;
  return log;
}

EventLog::EventLog(EventLog&& other) noexcept
    : events_(std::move(other.events_)), file_(std::move(other.file_)), fd_(std::exchange(other.fd_, -1)) {}

EventLog& EventLog::operator=(EventLog&& other) noexcept {
  if (this != &other) {
    close();
    events_ = std::move(other.events_);
    file_ = std::move(other.file_);
    fd_ = std::exchange(other.fd_, -1);
  }
  return *this;
}

EventLog::~EventLog() { close(); }

void EventLog::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

void EventLog::append(const SessionEvent& e) {
  if (e.seq != last_seq() + 1)
    throw Error(ErrorCode::SequenceGap,
                "expected seq " + std::to_string(last_seq() + 1) + ", got " + std::to_string(e.seq));
  if (file_) {
    if (fd_ < 0) throw Error(ErrorCode::StorageFailure, "session log is closed");
    write_all(fd_, to_jsonl(e) + "\n");
    if (::fsync(fd_) != 0) throw storage_failure("fsync of session log failed");
  }
  events_.push_back(e);
}

std::vector<SessionEvent> read_log_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::NotFound, "no session log at " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_log(buf.str());
}

}  // namespace phishpond::persistence
