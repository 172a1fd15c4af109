#include "evote/tally/borda.hpp"

#include <algorithm>
#include <functional>

#include "evote/tally/errors.hpp"
#include "validate.hpp"

namespace evote::tally {

BordaStandings bordaPoints(const CandidateSeq &roster, std::span<const PreferenceBallot> ballots) {
  BordaStandings standings;
  for (CandidateId c : roster) standings[c] = 0;
  const std::uint64_t n = roster.size();
  for (const auto &ballot : ballots) {
    std::uint64_t rank = 0;
    for (CandidateId c : ballot) {
      auto it = standings.find(c);
      if (it == standings.end()) continue;
      it->second += n - rank;
      ++rank;
    }
  }
  return standings;
}

bool placementsUnique(const BordaStandings &standings, std::size_t placements) {
  std::vector<std::uint64_t> scores;
  scores.reserve(standings.size());
  for (const auto &[c, points] : standings) scores.push_back(points);
  std::sort(scores.begin(), scores.end(), std::greater<>());

  const std::size_t checked = std::min(placements, scores.size());
  for (std::size_t i = 0; i < checked; ++i) {
    if (i > 0 && scores[i] == scores[i - 1]) return false;
    if (i + 1 < scores.size() && scores[i] == scores[i + 1]) return false;
  }
  return true;
}

namespace {

std::map<CandidateId, Rational> asTallies(const BordaStandings &standings) {
  std::map<CandidateId, Rational> out;
  for (const auto &[c, points] : standings) out.emplace(c, Rational(static_cast<std::int64_t>(points)));
  return out;
}

}  // namespace

BordaResult tallyBorda(const CandidateSeq &roster, std::span<const PreferenceBallot> ballots,
                       std::size_t maxTiedPlacements) {
  CandidateSet members = detail::requireOrderedRoster(roster);
  detail::requireRankings(ballots, members, /*allowEmpty=*/true);

  // First place must always be untied for a single winner.
  const std::size_t required = std::max<std::size_t>(1, maxTiedPlacements);

  BordaResult result;
  CandidateSeq remaining = roster;
  std::vector<PreferenceBallot> current(ballots.begin(), ballots.end());

  // Every pass either returns or removes at least one candidate.
  while (true) {
    result.standings = bordaPoints(remaining, current);
    auto tallies = asTallies(result.standings);

    if (placementsUnique(result.standings, required)) {
      auto top = std::max_element(result.standings.begin(), result.standings.end(),
                                  [](const auto &a, const auto &b) { return a.second < b.second; });
      result.winner = top->first;
      result.trace.push_back({std::move(tallies), RoundAction::Elect, {top->first}});
      return result;
    }

    auto lowestPoints = std::min_element(result.standings.begin(), result.standings.end(),
                                         [](const auto &a, const auto &b) { return a.second < b.second; })
                            ->second;
    CandidateSet lowest;
    for (const auto &[c, points] : result.standings) {
      if (points == lowestPoints) lowest.insert(c);
    }

    if (maxTiedPlacements == 0) {
      result.trace.push_back({std::move(tallies), RoundAction::NoWinner, {}});
      return result;
    }
    if (lowest.size() == remaining.size()) {
      result.trace.push_back({std::move(tallies), RoundAction::NoWinner, {lowest.begin(), lowest.end()}});
      return result;
    }

    result.trace.push_back({std::move(tallies), RoundAction::Eliminate, {lowest.begin(), lowest.end()}});
    std::erase_if(remaining, [&](CandidateId c) { return lowest.contains(c); });
    for (auto &ballot : current) {
      std::erase_if(ballot, [&](CandidateId c) { return lowest.contains(c); });
    }
  }
}

}  // namespace evote::tally
