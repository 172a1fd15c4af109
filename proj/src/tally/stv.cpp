#include "evote/tally/stv.hpp"

#include <algorithm>

#include "evote/tally/errors.hpp"
#include "validate.hpp"

namespace evote::tally {

Rational droopQuota(std::size_t numBallots, std::size_t seats) {
  Rational share(static_cast<std::int64_t>(numBallots), static_cast<std::int64_t>(seats + 1));
  return (share + Rational(1)).floor();
}

Rational calculateTotalValue(std::span<const PreferenceBallot> ballots, const CandidateSeq & /*roster*/,
                             std::span<const Rational> factors, CandidateId candidate) {
  if (ballots.size() != factors.size()) throw PreconditionError(Violation::LengthMismatch);
  Rational total;
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    if (!ballots[i].empty() && ballots[i].front() == candidate) total += factors[i];
  }
  return total;
}

TransferOutcome transferVotes(std::span<const PreferenceBallot> ballots, std::span<const Rational> factors,
                              CandidateId candidate, const Rational &quota, const Rational &totalValue) {
  if (ballots.size() != factors.size()) throw PreconditionError(Violation::LengthMismatch);

  const auto headedBy = [&](const PreferenceBallot &b) { return !b.empty() && b.front() == candidate; };
  const auto supporters = static_cast<std::int64_t>(std::count_if(ballots.begin(), ballots.end(), headedBy));
  if (totalValue > Rational(0) && supporters == 0) {
    throw PreconditionError(Violation::NoSupportingBallot, std::nullopt, candidate);
  }

  const bool surplus = totalValue >= quota;
  // Only read when some ballot is headed by `candidate`, so supporters > 0.
  const Rational multiplier =
      (surplus && supporters > 0) ? (totalValue - quota) / Rational(supporters) : Rational(1);

  TransferOutcome out;
  out.ballots.reserve(ballots.size());
  out.factors.reserve(factors.size());
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    const auto &ballot = ballots[i];
    if (headedBy(ballot)) {
      if (ballot.size() < 2) continue;  // nothing to transfer to
      Rational factor = surplus ? factors[i] * multiplier : factors[i];
      if (factor == Rational(0)) continue;  // carries no value
      out.ballots.emplace_back(ballot.begin() + 1, ballot.end());
      out.factors.push_back(std::move(factor));
      continue;
    }
    PreferenceBallot rest;
    rest.reserve(ballot.size());
    std::copy_if(ballot.begin(), ballot.end(), std::back_inserter(rest), [&](CandidateId c) { return c != candidate; });
    if (rest.empty()) continue;
    out.ballots.push_back(std::move(rest));
    out.factors.push_back(factors[i]);
  }
  return out;
}

CandidateId selectByScore(const std::map<CandidateId, Rational> &tallies, const Rational &target,
                          const CandidateSeq &roster) {
  for (CandidateId c : roster) {
    auto it = tallies.find(c);
    if (it != tallies.end() && it->second == target) return c;
  }
  throw PreconditionError(Violation::NoSuchScore);
}

StvResult singleTransferableVote(std::span<const PreferenceBallot> ballots, const CandidateSeq &roster,
                                 std::size_t seats, const StvObserver &observer) {
  CandidateSet members = detail::requireOrderedRoster(roster);
  detail::requireRankings(ballots, members, /*allowEmpty=*/false);
  if (seats > roster.size()) throw PreconditionError(Violation::SeatsExceedRoster);

  StvResult result;
  result.seats = seats;
  result.quota = droopQuota(ballots.size(), seats);
  const Rational &quota = result.quota;

  StvRoundState state;
  state.ballots.assign(ballots.begin(), ballots.end());
  state.factors.assign(ballots.size(), Rational(1));
  state.roster = roster;

  auto notify = [&] {
    if (observer) {
      state.elected = result.elected;
      state.autofilled = result.autofilled;
      observer(state);
    }
  };

  while (result.elected.size() + result.autofilled.size() < seats) {
    notify();

    std::map<CandidateId, Rational> tallies;
    for (CandidateId c : state.roster) {
      tallies[c] = calculateTotalValue(state.ballots, state.roster, state.factors, c);
    }

    if (state.roster.size() == seats - result.elected.size()) {
      result.autofilled = state.roster;
      result.trace.push_back({std::move(tallies), RoundAction::Autofill, state.roster});
      break;
    }

    auto byValue = [](const auto &a, const auto &b) { return a.second < b.second; };
    Rational top = std::max_element(tallies.begin(), tallies.end(), byValue)->second;
    if (top < quota) top = std::min_element(tallies.begin(), tallies.end(), byValue)->second;
    const CandidateId chosen = selectByScore(tallies, top, state.roster);

    if (top >= quota) {
      result.elected.push_back(chosen);
      result.witnesses.push_back({state.ballots, state.factors, state.roster});
      result.trace.push_back({std::move(tallies), RoundAction::Elect, {chosen}});
    } else {
      result.trace.push_back({std::move(tallies), RoundAction::Eliminate, {chosen}});
    }

    std::erase(state.roster, chosen);
    auto moved = transferVotes(state.ballots, state.factors, chosen, quota, top);
    state.ballots = std::move(moved.ballots);
    state.factors = std::move(moved.factors);
  }

  notify();
  return result;
}

}  // namespace evote::tally
