#include "evote/oracle/reference.hpp"

#include <algorithm>

namespace evote::oracle {

namespace {

struct RoundCounts {
  std::vector<std::pair<CandidateId, std::size_t>> counts;  // in roster (set) order
  std::size_t nonEmpty{0};
};

RoundCounts countRound(const CandidateSet &roster, std::span<const PreferenceBallot> ballots) {
  RoundCounts out;
  for (CandidateId c : roster) {
    std::size_t n = 0;
    for (const auto &b : ballots) {
      if (!b.empty() && b[0] == c) ++n;
    }
    out.counts.emplace_back(c, n);
  }
  for (const auto &b : ballots) {
    if (!b.empty()) ++out.nonEmpty;
  }
  return out;
}

OracleVerdict evaluate(CandidateId candidate, const CandidateSet &roster, const std::vector<PreferenceBallot> &ballots,
                       std::size_t depth) {
  OracleVerdict verdict{candidate, false, depth};
  if (ballots.empty() || roster.empty() || !roster.contains(candidate)) return verdict;

  RoundCounts round = countRound(roster, ballots);
  std::size_t mine = 0;
  bool someoneHasMajority = false;
  for (auto [c, n] : round.counts) {
    if (c == candidate) mine = n;
    if (2 * n > round.nonEmpty) someoneHasMajority = true;
  }
  if (2 * mine > round.nonEmpty) {
    verdict.isWinner = true;
    return verdict;
  }
  if (someoneHasMajority) return verdict;

  std::size_t least = round.counts.front().second;
  for (auto [c, n] : round.counts) least = std::min(least, n);
  CandidateSet survivors;
  for (auto [c, n] : round.counts) {
    if (n != least) survivors.insert(c);
  }
  if (!survivors.contains(candidate)) return verdict;

  std::vector<PreferenceBallot> reduced;
  for (const auto &b : ballots) {
    PreferenceBallot kept;
    for (CandidateId c : b) {
      if (survivors.contains(c)) kept.push_back(c);
    }
    reduced.push_back(kept);
  }
  return evaluate(candidate, survivors, reduced, depth + 1);
}

std::vector<std::uint64_t> sortedDescending(const tally::BordaStandings &standings) {
  std::vector<std::uint64_t> v;
  for (const auto &entry : standings) v.push_back(entry.second);
  std::sort(v.rbegin(), v.rend());
  return v;
}

}  // namespace

OracleVerdict evaluateIrvCandidate(CandidateId candidate, const CandidateSet &roster,
                                   std::span<const PreferenceBallot> ballots) {
  return evaluate(candidate, roster, {ballots.begin(), ballots.end()}, 0);
}

bool isWinnerIRV(CandidateId candidate, const CandidateSet &roster, std::span<const PreferenceBallot> ballots) {
  return evaluateIrvCandidate(candidate, roster, ballots).isWinner;
}

tally::BordaResult referenceBorda(const CandidateSeq &roster, std::span<const PreferenceBallot> ballots,
                                  std::size_t maxTiedPlacements) {
  tally::BordaResult result;
  CandidateSet alive(roster.begin(), roster.end());
  const std::size_t placesToCheck = maxTiedPlacements == 0 ? 1 : maxTiedPlacements;

  for (std::size_t round = 0; round <= roster.size(); ++round) {
    // Recompute from scratch against the original ballots.
    const std::uint64_t n = alive.size();
    tally::BordaStandings standings;
    for (CandidateId c : alive) standings[c] = 0;
    for (const auto &ballot : ballots) {
      std::vector<CandidateId> visible;
      for (CandidateId c : ballot) {
        if (alive.contains(c)) visible.push_back(c);
      }
      for (std::size_t pos = 0; pos < visible.size(); ++pos) standings[visible[pos]] += n - pos;
    }
    result.standings = standings;

    std::map<CandidateId, Rational> tallies;
    for (const auto &[c, p] : standings) tallies[c] = Rational(static_cast<std::int64_t>(p));

    auto scores = sortedDescending(standings);
    bool tied = false;
    for (std::size_t place = 0; place < placesToCheck && place < scores.size(); ++place) {
      auto holders = std::count(scores.begin(), scores.end(), scores[place]);
      if (holders > 1) tied = true;
    }
    if (!tied) {
      for (const auto &[c, p] : standings) {
        if (p == scores.front()) result.winner = c;
      }
      result.trace.push_back({tallies, tally::RoundAction::Elect, {result.winner}});
      return result;
    }
    if (maxTiedPlacements == 0) {
      result.trace.push_back({tallies, tally::RoundAction::NoWinner, {}});
      return result;
    }

    std::vector<CandidateId> losers;
    for (const auto &[c, p] : standings) {
      if (p == scores.back()) losers.push_back(c);
    }
    if (losers.size() == alive.size()) {
      result.trace.push_back({tallies, tally::RoundAction::NoWinner, losers});
      return result;
    }
    result.trace.push_back({tallies, tally::RoundAction::Eliminate, losers});
    for (CandidateId c : losers) alive.erase(c);
  }
  // Unreachable: every round removes a candidate and the last one always wins.
  result.winner = tally::kNoWinner;
  return result;
}

CandidateSet referenceScoreWinners(std::span<const tally::ScoreBallot> ballots, const CandidateSet &roster) {
  std::vector<std::pair<CandidateId, std::int64_t>> totals;
  for (CandidateId c : roster) {
    std::int64_t sum = 0;
    for (const auto &b : ballots) {
      for (const auto &[who, score] : b) {
        if (who == c) sum += score;
      }
    }
    totals.emplace_back(c, sum);
  }
  CandidateSet winners;
  for (const auto &[c, total] : totals) {
    bool beaten = false;
    for (const auto &[other, otherTotal] : totals) {
      if (otherTotal > total) beaten = true;
    }
    if (!beaten) winners.insert(c);
  }
  return winners;
}

std::size_t referenceQuota(std::size_t numBallots, std::size_t seats) { return numBallots / (seats + 1) + 1; }

StvStep referenceStvStep(const StvState &state, std::size_t quota, std::size_t seats) {
  StvStep step;
  step.next = state;
  StvState &next = step.next;

  if (state.elected.size() + state.autofilled.size() >= seats) return step;

  // Step 2: as many candidates left as open seats.
  if (state.roster.size() == seats - state.elected.size()) {
    next.autofilled = state.roster;
    step.classification = StvClassification::Autofill;
    return step;
  }

  // Step 1: weighted first preferences, in roster order.
  std::vector<Rational> values;
  std::vector<std::int64_t> heads;
  for (CandidateId c : state.roster) {
    Rational v;
    std::int64_t h = 0;
    for (std::size_t i = 0; i < state.ballots.size(); ++i) {
      if (state.ballots[i][0] == c) {
        v += state.factors[i];
        ++h;
      }
    }
    values.push_back(v);
    heads.push_back(h);
  }

  // Step 3: highest value; earliest roster position on ties.
  std::size_t pick = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[pick]) pick = i;
  }
  const Rational q(static_cast<std::int64_t>(quota));
  bool elect = values[pick] >= q;
  if (!elect) {
    // Step 5: lowest value instead.
    pick = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i] < values[pick]) pick = i;
    }
  }
  const CandidateId chosen = state.roster[pick];
  step.candidate = chosen;
  step.classification = elect ? StvClassification::Elected : StvClassification::Eliminated;
  if (elect) next.elected.push_back(chosen);

  // Steps 4/5: redistribute, then drop the chosen candidate everywhere.
  next.roster.clear();
  for (CandidateId c : state.roster) {
    if (c != chosen) next.roster.push_back(c);
  }
  next.ballots.clear();
  next.factors.clear();
  for (std::size_t i = 0; i < state.ballots.size(); ++i) {
    const auto &ballot = state.ballots[i];
    PreferenceBallot rest;
    for (CandidateId c : ballot) {
      if (c != chosen) rest.push_back(c);
    }
    if (rest.empty()) continue;
    Rational factor = state.factors[i];
    if (ballot[0] == chosen && elect) {
      factor = factor * (values[pick] - q) / Rational(heads[pick]);
      if (factor == Rational(0)) continue;
    }
    next.ballots.push_back(rest);
    next.factors.push_back(factor);
  }
  return step;
}

}  // namespace evote::oracle
