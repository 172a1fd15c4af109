#pragma once

// Internal precondition checks shared by the tally entry points.

#include <span>

#include "evote/tally/errors.hpp"
#include "evote/tally/types.hpp"

namespace evote::tally::detail {

void requireNoReserved(const CandidateSet &roster);
/// Non-empty, 0-free and duplicate-free; returns the members as a set.
CandidateSet requireOrderedRoster(const CandidateSeq &roster);
void requireRankings(std::span<const PreferenceBallot> ballots, const CandidateSet &roster, bool allowEmpty);

}  // namespace evote::tally::detail
