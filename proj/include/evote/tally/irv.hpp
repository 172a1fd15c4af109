#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "evote/tally/trace.hpp"
#include "evote/tally/types.hpp"

namespace evote::tally {

// Building blocks of the runoff. Ballots are assumed valid against the roster
// (checked once by instantRunoff); these helpers do not re-validate.

/// First-preference count for every roster member; empty ballots contribute nothing.
std::map<CandidateId, std::size_t> firstPreferenceCounts(const CandidateSet &roster,
                                                         std::span<const PreferenceBallot> ballots);

std::size_t countNonEmpty(std::span<const PreferenceBallot> ballots);

/// Absolute majority of the non-empty ballots: 2 * count > nonEmpty.
bool hasMajority(CandidateId candidate, const CandidateSet &roster, std::span<const PreferenceBallot> ballots);

/// All roster members tied at the minimum first-preference count.
/// Throws PreconditionError(EmptyRoster) on an empty roster.
CandidateSet lowestCandidates(const CandidateSet &roster, std::span<const PreferenceBallot> ballots);

/// Order-preserving filter of every ballot. Emptied ballots are kept in place,
/// so output[i] always corresponds to input[i].
std::vector<PreferenceBallot> removeCandidatesFromBallots(const CandidateSet &roster,
                                                          std::span<const PreferenceBallot> ballots,
                                                          const CandidateSet &toRemove);

struct IrvResult {
  CandidateId winner{kNoWinner};
  RoundTrace trace;

  bool hasWinner() const { return !winner.isNoWinner(); }
  friend bool operator==(const IrvResult &, const IrvResult &) = default;
};

/// Runs rounds until a candidate holds an absolute majority of the non-empty
/// ballots. Each round without one removes every tied-lowest candidate at
/// once; if that empties the roster there is no winner.
///
/// Throws PreconditionError (ReservedCandidate, UnknownCandidate,
/// DuplicateInBallot) identifying the first offending ballot.
IrvResult instantRunoff(const CandidateSet &roster, std::span<const PreferenceBallot> ballots);

}  // namespace evote::tally
