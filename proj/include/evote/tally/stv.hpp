#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "evote/rational.hpp"
#include "evote/tally/trace.hpp"
#include "evote/tally/types.hpp"

namespace evote::tally {

/// Ballots, factors and remaining roster at the moment a candidate reached the
/// quota. Recomputing that candidate's value from it must give at least the quota.
struct StateTriple {
  std::vector<PreferenceBallot> ballots;
  FactorList factors;
  CandidateSeq roster;

  friend bool operator==(const StateTriple &, const StateTriple &) = default;
};

struct StvResult {
  std::size_t seats{0};
  Rational quota;
  /// Quota winners, in order of classification.
  CandidateSeq elected;
  /// Seated because the remaining candidates matched the unfilled seats.
  CandidateSeq autofilled;
  /// witnesses[i] is the state in which elected[i] was classified.
  std::vector<StateTriple> witnesses;
  RoundTrace trace;

  friend bool operator==(const StvResult &, const StvResult &) = default;
};

/// floor(numBallots / (seats + 1) + 1), integer valued.
Rational droopQuota(std::size_t numBallots, std::size_t seats);

/// Sum of the factors of the non-empty ballots whose first preference is `candidate`.
/// `roster` is accepted for parity with the witness triple; it does not affect the sum.
Rational calculateTotalValue(std::span<const PreferenceBallot> ballots, const CandidateSeq &roster,
                             std::span<const Rational> factors, CandidateId candidate);

struct TransferOutcome {
  std::vector<PreferenceBallot> ballots;
  FactorList factors;

  friend bool operator==(const TransferOutcome &, const TransferOutcome &) = default;
};

/// Removes `candidate` from every ballot and carries the factors along.
///
/// Ballots headed by `candidate` with further preferences are transferable.
/// When totalValue >= quota their factor is scaled by (totalValue - quota) / k,
/// k being the number of ballots headed by `candidate` (a ballot count, not a
/// value); otherwise their factor is carried unchanged. Ballots left empty by
/// the removal, and ballots whose scaled factor is zero, are non-transferable
/// and dropped together with their factor.
///
/// Throws PreconditionError (LengthMismatch, NoSupportingBallot when
/// totalValue > 0 but nobody ranks `candidate` first).
TransferOutcome transferVotes(std::span<const PreferenceBallot> ballots, std::span<const Rational> factors,
                              CandidateId candidate, const Rational &quota, const Rational &totalValue);

/// Earliest roster member whose tally equals `target`.
/// Throws PreconditionError(NoSuchScore) if there is none.
CandidateId selectByScore(const std::map<CandidateId, Rational> &tallies, const Rational &target,
                          const CandidateSeq &roster);

/// Working state at the top of one STV iteration.
struct StvRoundState {
  std::vector<PreferenceBallot> ballots;
  FactorList factors;
  CandidateSeq roster;
  CandidateSeq elected;
  CandidateSeq autofilled;

  friend bool operator==(const StvRoundState &, const StvRoundState &) = default;
};

/// Called with the working state before every iteration and once more with
/// the final state.
using StvObserver = std::function<void(const StvRoundState &)>;

/// Single Transferable Vote with Droop quota and fractional surplus transfer.
/// Ties in the highest or lowest tally go to the candidate listed first in `roster`.
///
/// Throws PreconditionError (EmptyRoster, ReservedCandidate,
/// DuplicateCandidate, EmptyBallot, UnknownCandidate, DuplicateInBallot,
/// SeatsExceedRoster).
StvResult singleTransferableVote(std::span<const PreferenceBallot> ballots, const CandidateSeq &roster,
                                 std::size_t seats, const StvObserver &observer = {});

}  // namespace evote::tally
