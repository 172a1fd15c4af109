#include "evote/tally/errors.hpp"

namespace evote::tally {

std::string_view name(Violation v) {
  switch (v) {
    case Violation::EmptyRoster: return "EmptyRoster";
    case Violation::ReservedCandidate: return "ReservedCandidate";
    case Violation::DuplicateCandidate: return "DuplicateCandidate";
    case Violation::UnknownCandidate: return "UnknownCandidate";
    case Violation::DuplicateInBallot: return "DuplicateInBallot";
    case Violation::EmptyBallot: return "EmptyBallot";
    case Violation::OutOfRangeScore: return "OutOfRangeScore";
    case Violation::InvalidRange: return "InvalidRange";
    case Violation::SeatsExceedRoster: return "SeatsExceedRoster";
    case Violation::LengthMismatch: return "LengthMismatch";
    case Violation::NoSupportingBallot: return "NoSupportingBallot";
    case Violation::NoSuchScore: return "NoSuchScore";
  }
  return "Unknown";
}

namespace {

std::string describe(Violation kind, std::optional<std::size_t> ballot, std::optional<CandidateId> cand) {
  std::string msg(name(kind));
  if (ballot) msg += " at ballot " + std::to_string(*ballot);
  if (cand) msg += " (candidate " + std::to_string(cand->value) + ")";
  return msg;
}

}  // namespace

PreconditionError::PreconditionError(Violation kind, std::optional<std::size_t> ballotIndex,
                                     std::optional<CandidateId> candidate)
    : std::invalid_argument(describe(kind, ballotIndex, candidate)),
      kind_(kind),
      ballotIndex_(ballotIndex),
      candidate_(candidate) {}

}  // namespace evote::tally
