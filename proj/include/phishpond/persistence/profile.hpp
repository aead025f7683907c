#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "phishpond/game/session.hpp"
#include "phishpond/ttat/ttat.hpp"

namespace phishpond::persistence {

struct ProfileSession {
  std::string session_id;
  game::SessionSummary summary;
  std::optional<ttat::TtatConstructs> constructs;

  bool operator==(const ProfileSession&) const = default;
};

struct PlayerProfile {
  std::string player_id;
  std::string display_name;
  std::vector<ProfileSession> sessions;  // in the order they ended
  std::map<Mode, std::map<Tier, int>> best_scores;

  // Appends and updates best_scores from the summary's level scores.
  // Throws Error(DuplicateSession) if the id is already listed.
  void add_session(ProfileSession s);

  bool operator==(const PlayerProfile&) const = default;
};

// Letters, digits, '-' and '_', 1 to 64 characters. Player and session ids
// become file names, so nothing else is accepted.
bool valid_id(std::string_view id);

nlohmann::json to_json(const PlayerProfile& p);
PlayerProfile profile_from_json(const nlohmann::json& j);

/// Profiles and session logs under one data directory:
///   <dir>/players/<player_id>.json
///   <dir>/sessions/<session_id>.jsonl
/// Writes for one player are serialized; a profile file is replaced
/// atomically (write to a temporary, fsync, rename).
class ProfileStore {
 public:
  explicit ProfileStore(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  // Throws Error(NotFound) for unknown or invalid ids.
  PlayerProfile load(const std::string& player_id) const;
  void save(const PlayerProfile& p);

  // Load-or-create, add the session, save; all under the player's lock.
  PlayerProfile record_session(const std::string& player_id, const std::string& display_name,
                               ProfileSession s);

  std::filesystem::path session_log_path(const std::string& session_id) const;

 private:
  std::mutex& lock_for(const std::string& player_id);
  std::filesystem::path profile_path(const std::string& player_id) const;

  std::filesystem::path dir_;
  std::mutex locks_guard_;
  std::map<std::string, std::unique_ptr<std::mutex>> locks_;
};

// The --data flag if given, else $PHISHPOND_DATA, else ./phishpond-data.
std::filesystem::path resolve_data_dir(const std::optional<std::string>& flag);

}  // namespace phishpond::persistence
