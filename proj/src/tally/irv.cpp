#include "evote/tally/irv.hpp"

#include <algorithm>

#include "evote/tally/errors.hpp"
#include "validate.hpp"

namespace evote::tally {

std::map<CandidateId, std::size_t> firstPreferenceCounts(const CandidateSet &roster,
                                                         std::span<const PreferenceBallot> ballots) {
  std::map<CandidateId, std::size_t> counts;
  for (CandidateId c : roster) counts[c] = 0;
  for (const auto &ballot : ballots) {
    if (ballot.empty()) continue;
    auto it = counts.find(ballot.front());
    if (it != counts.end()) ++it->second;
  }
  return counts;
}

std::size_t countNonEmpty(std::span<const PreferenceBallot> ballots) {
  return static_cast<std::size_t>(
      std::count_if(ballots.begin(), ballots.end(), [](const auto &b) { return !b.empty(); }));
}

bool hasMajority(CandidateId candidate, const CandidateSet &roster, std::span<const PreferenceBallot> ballots) {
  auto counts = firstPreferenceCounts(roster, ballots);
  auto it = counts.find(candidate);
  std::size_t votes = it == counts.end() ? 0 : it->second;
  return 2 * votes > countNonEmpty(ballots);
}

CandidateSet lowestCandidates(const CandidateSet &roster, std::span<const PreferenceBallot> ballots) {
  if (roster.empty()) throw PreconditionError(Violation::EmptyRoster);
  auto counts = firstPreferenceCounts(roster, ballots);
  auto lowest = std::min_element(counts.begin(), counts.end(),
                                 [](const auto &a, const auto &b) { return a.second < b.second; })
                    ->second;
  CandidateSet out;
  for (const auto &[c, n] : counts) {
    if (n == lowest) out.insert(c);
  }
  return out;
}

std::vector<PreferenceBallot> removeCandidatesFromBallots(const CandidateSet & /*roster*/,
                                                          std::span<const PreferenceBallot> ballots,
                                                          const CandidateSet &toRemove) {
  std::vector<PreferenceBallot> out;
  out.reserve(ballots.size());
  for (const auto &ballot : ballots) {
    PreferenceBallot kept;
    kept.reserve(ballot.size());
    std::copy_if(ballot.begin(), ballot.end(), std::back_inserter(kept),
                 [&](CandidateId c) { return !toRemove.contains(c); });
    out.push_back(std::move(kept));
  }
  return out;
}

namespace {

std::map<CandidateId, Rational> asTallies(const std::map<CandidateId, std::size_t> &counts) {
  std::map<CandidateId, Rational> out;
  for (const auto &[c, n] : counts) out.emplace(c, Rational(static_cast<std::int64_t>(n)));
  return out;
}

}  // namespace

IrvResult instantRunoff(const CandidateSet &roster, std::span<const PreferenceBallot> ballots) {
  detail::requireNoReserved(roster);
  detail::requireRankings(ballots, roster, /*allowEmpty=*/true);

  IrvResult result;
  if (ballots.empty() || roster.empty()) return result;

  CandidateSet remaining = roster;
  std::vector<PreferenceBallot> current(ballots.begin(), ballots.end());

  while (!remaining.empty()) {
    auto counts = firstPreferenceCounts(remaining, current);
    std::size_t nonEmpty = countNonEmpty(current);

    auto majority = std::find_if(counts.begin(), counts.end(),
                                 [&](const auto &entry) { return 2 * entry.second > nonEmpty; });
    if (majority != counts.end()) {
      result.winner = majority->first;
      result.trace.push_back({asTallies(counts), RoundAction::MajorityWin, {majority->first}});
      return result;
    }

    CandidateSet lowest = lowestCandidates(remaining, current);
    bool everyoneOut = lowest.size() == remaining.size();
    result.trace.push_back({asTallies(counts), everyoneOut ? RoundAction::NoWinner : RoundAction::Eliminate,
                            {lowest.begin(), lowest.end()}});

    current = removeCandidatesFromBallots(remaining, current, lowest);
    for (CandidateId c : lowest) remaining.erase(c);
  }
  return result;
}

}  // namespace evote::tally
