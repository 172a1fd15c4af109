#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "evote/io/definition.hpp"
#include "evote/io/diagnostic.hpp"
#include "evote/io/result.hpp"
#include "evote/tally/types.hpp"

namespace evote::service {

using ElectionId = std::string;

enum class Status { Open, Closed, Tallied, Invalidated };
std::string_view name(Status status);

enum class EnforcementMode { Precheck, Halt };
std::string_view name(EnforcementMode mode);
std::optional<EnforcementMode> parseEnforcementMode(std::string_view text);

using BallotPayload = std::variant<tally::PreferenceBallot, tally::ScoreBallot>;

/// {"ranking":[1,3,2]} or {"scores":{"1":5}}. Throws ServiceError(InvalidBallot)
/// with kind SyntaxError for anything else.
BallotPayload payloadFromJson(const nlohmann::json &json);
nlohmann::ordered_json payloadToJson(const BallotPayload &payload);

struct Voter {
  std::string contact;
  std::string tokenHash;
};

/// Ballots carry no reference to a voter; usedTokens records only that a
/// token was spent.
struct ElectionRecord {
  ElectionId id;
  io::ElectionDefinition definition;
  Status status{Status::Open};
  std::string createdAt;
  std::vector<Voter> voters;
  std::set<std::string> usedTokens;
  std::vector<BallotPayload> ballots;
  std::optional<io::ResultDocument> result;
};

struct Tombstone {
  ElectionId id;
  std::string reason;
  std::string invalidatedAt;
};

struct OutboxRecord {
  std::string recipient;
  ElectionId electionId;
  std::string reason;
  std::string timestamp;
};

enum class ErrorCode {
  NotFound,
  InvalidDefinition,
  ElectionClosed,
  InvalidToken,
  TokenUsed,
  InvalidBallot,
  InvalidRequest,
  NotTallied,
  AlreadyTallied,
  ValidationFailure,
};
std::string_view name(ErrorCode code);

class ServiceError : public std::runtime_error {
 public:
  ServiceError(ErrorCode code, std::string message, std::optional<io::ErrorKind> kind = std::nullopt,
               std::optional<Tombstone> tombstone = std::nullopt);

  ErrorCode code() const { return code_; }
  /// The violated ballot or definition rule, when there is one.
  const std::optional<io::ErrorKind> &kind() const { return kind_; }
  /// Set on NotFound for an invalidated election.
  const std::optional<Tombstone> &tombstone() const { return tombstone_; }

 private:
  ErrorCode code_;
  std::optional<io::ErrorKind> kind_;
  std::optional<Tombstone> tombstone_;
};

}  // namespace evote::service
