#include "evote/tally/score.hpp"

#include <algorithm>

#include "evote/tally/errors.hpp"
#include "validate.hpp"

namespace evote::tally {

ScoreResult tallyScore(std::span<const ScoreBallot> ballots, const CandidateSet &roster, ScoreRange range) {
  if (roster.empty()) throw PreconditionError(Violation::EmptyRoster);
  if (range.minScore > range.maxScore) throw PreconditionError(Violation::InvalidRange);
  detail::requireNoReserved(roster);

  ScoreResult result;
  for (CandidateId c : roster) result.totals[c] = 0;

  for (std::size_t i = 0; i < ballots.size(); ++i) {
    for (const auto &[candidate, score] : ballots[i]) {
      if (!roster.contains(candidate)) throw PreconditionError(Violation::UnknownCandidate, i, candidate);
      if (score < range.minScore || score > range.maxScore) {
        throw PreconditionError(Violation::OutOfRangeScore, i, candidate);
      }
      result.totals[candidate] += score;
    }
  }

  auto best = std::max_element(result.totals.begin(), result.totals.end(),
                               [](const auto &a, const auto &b) { return a.second < b.second; });
  for (const auto &[candidate, total] : result.totals) {
    if (total == best->second) result.winners.insert(candidate);
  }
  return result;
}

}  // namespace evote::tally
