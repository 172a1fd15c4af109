#include "validate.hpp"

namespace evote::tally::detail {

void requireNoReserved(const CandidateSet &roster) {
  if (roster.contains(kNoWinner)) throw PreconditionError(Violation::ReservedCandidate, std::nullopt, kNoWinner);
}

CandidateSet requireOrderedRoster(const CandidateSeq &roster) {
  if (roster.empty()) throw PreconditionError(Violation::EmptyRoster);
  CandidateSet members;
  for (CandidateId c : roster) {
    if (c.isNoWinner()) throw PreconditionError(Violation::ReservedCandidate, std::nullopt, c);
    if (!members.insert(c).second) throw PreconditionError(Violation::DuplicateCandidate, std::nullopt, c);
  }
  return members;
}

void requireRankings(std::span<const PreferenceBallot> ballots, const CandidateSet &roster, bool allowEmpty) {
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    const auto &ballot = ballots[i];
    if (ballot.empty() && !allowEmpty) throw PreconditionError(Violation::EmptyBallot, i);
    CandidateSet seen;
    for (CandidateId c : ballot) {
      if (!roster.contains(c)) throw PreconditionError(Violation::UnknownCandidate, i, c);
      if (!seen.insert(c).second) throw PreconditionError(Violation::DuplicateInBallot, i, c);
    }
  }
}

}  // namespace evote::tally::detail
