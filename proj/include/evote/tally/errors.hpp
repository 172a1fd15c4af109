#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "evote/tally/types.hpp"

namespace evote::tally {

enum class Violation {
  EmptyRoster,
  ReservedCandidate,   // 0 appears in a roster
  DuplicateCandidate,  // roster lists a candidate twice
  UnknownCandidate,
  DuplicateInBallot,
  EmptyBallot,
  OutOfRangeScore,
  InvalidRange,
  SeatsExceedRoster,
  LengthMismatch,
  NoSupportingBallot,
  NoSuchScore,
};

std::string_view name(Violation v);

/// Thrown by every tally entry point when its input contract does not hold.
/// Carries enough structure for callers to distinguish the failure without
/// parsing the message.
class PreconditionError : public std::invalid_argument {
 public:
  PreconditionError(Violation kind, std::optional<std::size_t> ballotIndex = std::nullopt,
                    std::optional<CandidateId> candidate = std::nullopt);

  Violation kind() const noexcept { return kind_; }
  std::optional<std::size_t> ballotIndex() const noexcept { return ballotIndex_; }
  std::optional<CandidateId> candidate() const noexcept { return candidate_; }

 private:
  Violation kind_;
  std::optional<std::size_t> ballotIndex_;
  std::optional<CandidateId> candidate_;
};

}  // namespace evote::tally
