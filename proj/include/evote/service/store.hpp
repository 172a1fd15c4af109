#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <variant>
#include <vector>

#include "evote/service/domain.hpp"

namespace evote::service {

struct ElectionCreated {
  ElectionId id;
  std::string createdAt;
  io::ElectionDefinition definition;
};
struct VoterRegistered {
  ElectionId id;
  Voter voter;
};
struct TokenConsumed {
  ElectionId id;
  std::string tokenHash;
};
struct BallotAccepted {
  ElectionId id;
  std::size_t index;
  BallotPayload ballot;
};
struct ElectionClosed {
  ElectionId id;
};
struct ElectionTallied {
  ElectionId id;
  io::ResultDocument result;
};

using Event = std::variant<ElectionCreated, VoterRegistered, TokenConsumed, BallotAccepted, ElectionClosed,
                           ElectionTallied>;

class StoreError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File-backed state: `snapshot.json` holds everything up to a sequence
/// number and `events.jsonl` the events after it, one JSON object per line.
/// Events are structural facts; ballot contents are not validated here.
/// Thread-safe.
class EventStore {
 public:
  EventStore(std::filesystem::path directory, std::size_t snapshotEvery);

  /// Runs `visit` on the election under a shared lock; false if absent.
  bool read(const ElectionId &id, const std::function<void(const ElectionRecord &)> &visit) const;
  std::optional<ElectionRecord> find(const ElectionId &id) const;
  std::optional<Tombstone> tombstone(const ElectionId &id) const;
  /// True for live and invalidated elections alike; ids are never reused.
  bool exists(const ElectionId &id) const;

  /// Persists then applies `batch` as one write. Throws StoreError if an
  /// event does not fit the current state; nothing is written then.
  void append(const std::vector<Event> &batch);

  /// Drops the election and all its events, keeping only a tombstone, and
  /// compacts the files so no trace of its definition, voters or ballots remains.
  void purge(const ElectionId &id, Tombstone tombstone);

  /// Folds the event log into the snapshot and empties the log.
  void compact();

  std::filesystem::path eventLogPath() const { return directory_ / "events.jsonl"; }
  std::filesystem::path snapshotPath() const { return directory_ / "snapshot.json"; }
  std::uint64_t sequence() const;

 private:
  void load();
  void applyEvent(std::map<ElectionId, ElectionRecord> &elections, const Event &event) const;
  void compactLocked();
  void openLog(bool truncate);

  std::filesystem::path directory_;
  std::size_t snapshotEvery_;
  mutable std::shared_mutex mutex_;
  std::map<ElectionId, ElectionRecord> elections_;
  std::map<ElectionId, Tombstone> tombstones_;
  std::uint64_t sequence_{0};
  std::size_t eventsSinceSnapshot_{0};
  std::ofstream log_;
};

nlohmann::ordered_json eventToJson(const Event &event, std::uint64_t sequence);
/// Throws StoreError.
Event eventFromJson(const nlohmann::json &json);

}  // namespace evote::service
