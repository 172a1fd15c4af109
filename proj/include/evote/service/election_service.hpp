#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "evote/io/ballots.hpp"
#include "evote/io/result.hpp"
#include "evote/service/domain.hpp"
#include "evote/service/outbox.hpp"
#include "evote/service/store.hpp"

namespace evote::service {

struct ServiceOptions {
  std::filesystem::path storeDirectory;
  std::filesystem::path outboxDirectory;
  EnforcementMode enforcement{EnforcementMode::Precheck};
  std::size_t snapshotEvery{256};
  /// ISO-8601 UTC timestamps; replaceable for tests.
  std::function<std::string()> clock;
  /// Receives outbox records after each invalidation; none means they stay pending.
  std::shared_ptr<NotificationSender> sender;
};

struct ElectionSummary {
  ElectionId id;
  Status status;
  std::string createdAt;
  io::ElectionDefinition definition;
  std::size_t voters;
  std::size_t ballots;
};

struct Receipt {
  ElectionId electionId;
  /// SHA-256 of the election id and the canonical ballot JSON.
  std::string ballotHash;
};

std::string utcNow();

/// Election lifecycle on top of the event store. All mutations of one
/// election are serialized; different elections proceed in parallel.
class ElectionService {
 public:
  explicit ElectionService(ServiceOptions options);

  /// Throws ServiceError(InvalidDefinition).
  ElectionSummary createElection(const io::ElectionDefinition &definition);
  /// Returns the single-use cast token; only its hash is stored.
  std::string registerVoter(const ElectionId &id, const std::string &contact);
  Receipt castBallot(const ElectionId &id, const std::string &token, const BallotPayload &ballot);
  /// Tallies the stored ballots in arrival order. A ballot that breaks a
  /// tally precondition invalidates the election and throws ValidationFailure.
  io::ResultDocument closeAndTally(const ElectionId &id);
  void invalidateElection(const ElectionId &id, const std::string &reason);

  ElectionSummary getElection(const ElectionId &id) const;
  io::ResultDocument getResult(const ElectionId &id) const;
  io::BallotFile exportBallots(const ElectionId &id) const;

  EnforcementMode enforcement() const { return options_.enforcement; }
  const EventStore &store() const { return store_; }
  Outbox &outbox() { return outbox_; }

 private:
  std::shared_ptr<std::mutex> lockFor(const ElectionId &id);
  [[noreturn]] void notFound(const ElectionId &id) const;
  ElectionRecord load(const ElectionId &id) const;
  void screenBallot(const io::ElectionDefinition &definition, const BallotPayload &ballot) const;
  void invalidateLocked(const ElectionId &id, const std::string &reason);

  ServiceOptions options_;
  EventStore store_;
  Outbox outbox_;
  std::mutex locksMutex_;
  std::map<ElectionId, std::shared_ptr<std::mutex>> locks_;
};

}  // namespace evote::service
