#pragma once

// Brute-force reference models of the tally algorithms. They are written
// independently of evote::tally (only the value types are shared) and are
// meant to be slow and obvious. Differential tests compare the two.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "evote/tally/borda.hpp"
#include "evote/tally/score.hpp"
#include "evote/tally/types.hpp"

namespace evote::oracle {

using tally::CandidateId;
using tally::CandidateSeq;
using tally::CandidateSet;
using tally::FactorList;
using tally::PreferenceBallot;

struct OracleVerdict {
  CandidateId candidate;
  bool isWinner{false};
  /// Number of elimination rounds the recursion descended through.
  std::size_t recursionDepth{0};
};

/// Recursive winner predicate for IRV: a candidate wins if the ballot
/// sequence is non-empty and it either holds an absolute majority of the
/// non-empty ballots now, or survives this round's elimination of every
/// tied-lowest candidate and wins the reduced election.
OracleVerdict evaluateIrvCandidate(CandidateId candidate, const CandidateSet &roster,
                                   std::span<const PreferenceBallot> ballots);

bool isWinnerIRV(CandidateId candidate, const CandidateSet &roster, std::span<const PreferenceBallot> ballots);

/// Borda with Baldwin resolution by naive recomputation from the original
/// ballots every round.
tally::BordaResult referenceBorda(const CandidateSeq &roster, std::span<const PreferenceBallot> ballots,
                                  std::size_t maxTiedPlacements);

/// Every candidate whose summed score equals the maximum, found by comparing
/// all pairs of totals.
CandidateSet referenceScoreWinners(std::span<const tally::ScoreBallot> ballots, const CandidateSet &roster);

struct StvState {
  std::vector<PreferenceBallot> ballots;
  FactorList factors;
  CandidateSeq roster;
  CandidateSeq elected;
  CandidateSeq autofilled;
};

enum class StvClassification { Done, Autofill, Elected, Eliminated };

struct StvStep {
  StvState next;
  StvClassification classification{StvClassification::Done};
  std::optional<CandidateId> candidate;
};

/// Integer Droop quota: n / (s + 1) + 1 in integer arithmetic.
std::size_t referenceQuota(std::size_t numBallots, std::size_t seats);

/// One iteration of the STV loop, transcribed step by step:
///   count first preferences; seat everyone left if they match the open
///   seats; otherwise take the highest count and elect it when it meets the
///   quota (scaling its transferable ballots by surplus / supporter count),
///   else eliminate the lowest; earliest roster position wins ties.
StvStep referenceStvStep(const StvState &state, std::size_t quota, std::size_t seats);

}  // namespace evote::oracle
