#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>

#include "evote/tally/trace.hpp"
#include "evote/tally/types.hpp"

namespace evote::tally {

using BordaStandings = std::map<CandidateId, std::uint64_t>;

struct BordaResult {
  CandidateId winner{kNoWinner};
  /// Standings of the last round computed; on failure this is the final tie.
  BordaStandings standings;
  RoundTrace trace;

  bool hasWinner() const { return !winner.isNoWinner(); }
  friend bool operator==(const BordaResult &, const BordaResult &) = default;
};

/// Points for one round: with n roster members, rank j (0-based) on a ballot
/// is worth n - j. Candidates missing from a ballot get nothing from it, and
/// ballot entries outside the roster are skipped without consuming a rank.
BordaStandings bordaPoints(const CandidateSeq &roster, std::span<const PreferenceBallot> ballots);

/// True when each of the first `placements` places of the standings is held
/// by exactly one candidate (places beyond the roster size are ignored).
bool placementsUnique(const BordaStandings &standings, std::size_t placements);

/// Borda count with Baldwin-style tie resolution.
///
/// The winner must hold first place alone; additionally the first
/// `maxTiedPlacements` places must be untied. While they are not, every
/// lowest-scoring candidate is dropped and points are recomputed with the
/// smaller n. With maxTiedPlacements == 0 no resolution is attempted, so a
/// tie for first place means no winner. Resolution also ends with no winner
/// when it eliminates the whole roster.
///
/// Throws PreconditionError (EmptyRoster, ReservedCandidate,
/// DuplicateCandidate, UnknownCandidate, DuplicateInBallot).
BordaResult tallyBorda(const CandidateSeq &roster, std::span<const PreferenceBallot> ballots,
                       std::size_t maxTiedPlacements);

}  // namespace evote::tally
