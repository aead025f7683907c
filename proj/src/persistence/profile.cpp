#include "phishpond/persistence/profile.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <cstring>

#include "phishpond/codec.hpp"
#include "phishpond/config_io.hpp"
#include "phishpond/error.hpp"

namespace phishpond::persistence {

using nlohmann::json;

void PlayerProfile::add_session(ProfileSession s) {
  const bool dup = std::any_of(sessions.begin(), sessions.end(),
                               [&](const ProfileSession& p) { return p.session_id == s.session_id; });
  if (dup) throw Error(ErrorCode::DuplicateSession, "session " + s.session_id + " is already recorded");
  auto& best = best_scores[s.summary.mode];
  for (const auto& [tier, score] : s.summary.level_scores) {
    auto [it, inserted] = best.emplace(tier, score);
    if (!inserted) it->second = std::max(it->second, score);
  }
  sessions.push_back(std::move(s));
}

bool valid_id(std::string_view id) {
  if (id.empty() || id.size() > 64) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
           c == '_';
  });
}

json to_json(const PlayerProfile& p) {
  json sessions = json::array();
  for (const auto& s : p.sessions)
    sessions.push_back({{"session_id", s.session_id},
                        {"summary", codec::to_json(s.summary)},
                        {"constructs", s.constructs ? codec::to_json(*s.constructs) : json(nullptr)}});
  json best = json::object();
  for (const auto& [mode, tiers] : p.best_scores) {
    json per = json::object();
    for (const auto& [tier, score] : tiers) per[std::string(to_string(tier))] = score;
    best[std::string(to_string(mode))] = per;
  }
  return {{"player_id", p.player_id},
          {"display_name", p.display_name},
          {"sessions", sessions},
          {"best_scores", best}};
}

PlayerProfile profile_from_json(const json& j) {
  PlayerProfile p;
  p.player_id = codec::require_string(j, "player_id");
  p.display_name = codec::optional_string(j, "display_name");
  const auto& sessions = codec::require(j, "sessions");
  if (!sessions.is_array()) throw codec::CodecError("sessions must be an array");
  for (const auto& s : sessions) {
    ProfileSession ps;
    ps.session_id = codec::require_string(s, "session_id");
    ps.summary = codec::summary_from_json(codec::require(s, "summary"));
    if (const auto& c = codec::require(s, "constructs"); !c.is_null())
      ps.constructs = codec::constructs_from_json(c);
    p.sessions.push_back(std::move(ps));
  }
  const auto& best = codec::require(j, "best_scores");
  if (!best.is_object()) throw codec::CodecError("best_scores must be an object");
  for (const auto& [mode_name, tiers] : best.items()) {
    const auto mode = parse_mode(mode_name);
    if (!mode || !tiers.is_object()) throw codec::CodecError("bad best_scores entry");
    for (const auto& [tier_name, score] : tiers.items()) {
      const auto tier = parse_tier(tier_name);
      if (!tier || !score.is_number_integer()) throw codec::CodecError("bad best_scores entry");
      p.best_scores[*mode][*tier] = score.get<int>();
    }
  }
  return p;
}

ProfileStore::ProfileStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_ / "players", ec);
  if (!ec) std::filesystem::create_directories(dir_ / "sessions", ec);
  if (ec) throw Error(ErrorCode::StorageFailure, "cannot prepare data directory " + dir_.string() + ": " + ec.message());
}

std::filesystem::path ProfileStore::profile_path(const std::string& player_id) const {
  return dir_ / "players" / (player_id + ".json");
}

std::filesystem::path ProfileStore::session_log_path(const std::string& session_id) const {
  if (!valid_id(session_id)) throw Error(ErrorCode::StorageFailure, "unusable session id '" + session_id + "'");
  return dir_ / "sessions" / (session_id + ".jsonl");
}

std::mutex& ProfileStore::lock_for(const std::string& player_id) {
  std::lock_guard guard(locks_guard_);
  auto& slot = locks_[player_id];
  if (!slot) slot = std::make_unique<std::mutex>();
  return *slot;
}

PlayerProfile ProfileStore::load(const std::string& player_id) const {
  if (!valid_id(player_id)) throw Error(ErrorCode::NotFound, "no player '" + player_id + "'");
  const auto path = profile_path(player_id);
  if (!std::filesystem::exists(path)) throw Error(ErrorCode::NotFound, "no player '" + player_id + "'");
  try {
    return profile_from_json(json::parse(read_text_file(path)));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::StorageFailure, "profile " + path.string() + " is unreadable: " + e.what());
  } catch (const codec::CodecError& e) {
    throw Error(ErrorCode::StorageFailure, "profile " + path.string() + " is malformed: " + e.what());
  }
}

void ProfileStore::save(const PlayerProfile& p) {
  if (!valid_id(p.player_id)) throw Error(ErrorCode::StorageFailure, "unusable player id '" + p.player_id + "'");
  const auto path = profile_path(p.player_id);
  auto tmp = path;
  tmp += ".tmp";
  const std::string bytes = to_json(p).dump(2) + "\n";

  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) throw Error(ErrorCode::StorageFailure, "cannot write " + tmp.string() + ": " + std::strerror(errno));
  std::size_t done = 0;
  bool ok = true;
  while (ok && done < bytes.size()) {
    const auto n = ::write(fd, bytes.data() + done, bytes.size() - done);
    if (n < 0 && errno == EINTR) continue;
    ok = n > 0;
    if (ok) done += static_cast<std::size_t>(n);
  }
  ok = ok && ::fsync(fd) == 0;
  ::close(fd);
  if (!ok || std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error(ErrorCode::StorageFailure, "cannot write " + path.string() + ": " + std::strerror(errno));
}

PlayerProfile ProfileStore::record_session(const std::string& player_id, const std::string& display_name,
                                           ProfileSession s) {
  if (!valid_id(player_id)) throw Error(ErrorCode::StorageFailure, "unusable player id '" + player_id + "'");
  std::lock_guard guard(lock_for(player_id));
  PlayerProfile p;
  try {
    p = load(player_id);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotFound) throw;
    p.player_id = player_id;
  }
  if (!display_name.empty()) p.display_name = display_name;
  p.add_session(std::move(s));
  save(p);
  return p;
}

std::filesystem::path resolve_data_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("PHISHPOND_DATA"); env && *env) return env;
  return "phishpond-data";
}

}  // namespace phishpond::persistence
