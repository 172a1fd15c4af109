#pragma once

#include <cstdint>
#include <map>
#include <span>

#include "evote/tally/types.hpp"

namespace evote::tally {

struct ScoreResult {
  std::map<CandidateId, std::int64_t> totals;
  /// Every candidate holding the maximal total. Ties are reported, not broken.
  CandidateSet winners;

  friend bool operator==(const ScoreResult &, const ScoreResult &) = default;
};

/// Sums scores per candidate; a candidate missing from a ballot scores 0 on it.
/// Throws PreconditionError (EmptyRoster, InvalidRange, UnknownCandidate,
/// OutOfRangeScore, ReservedCandidate).
ScoreResult tallyScore(std::span<const ScoreBallot> ballots, const CandidateSet &roster, ScoreRange range);

}  // namespace evote::tally
