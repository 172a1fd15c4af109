#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "evote/tally/types.hpp"

namespace evote::oracle {

using Rng = std::mt19937_64;

/// Seed for the i-th instance of a run, so any single instance can be replayed.
std::uint64_t instanceSeed(std::uint64_t runSeed, std::uint64_t index);

struct IrvInstance {
  tally::CandidateSet roster;
  std::vector<tally::PreferenceBallot> ballots;
};

struct BordaInstance {
  tally::CandidateSeq roster;
  std::vector<tally::PreferenceBallot> ballots;
  std::size_t maxTiedPlacements{0};
};

struct StvInstance {
  tally::CandidateSeq roster;
  std::vector<tally::PreferenceBallot> ballots;
  std::size_t seats{0};
};

struct ScoreInstance {
  tally::CandidateSet roster;
  std::vector<tally::ScoreBallot> ballots;
  tally::ScoreRange range;
};

/// `count` distinct ids drawn from 1..idCeiling, in random order.
tally::CandidateSeq randomRoster(Rng &rng, std::size_t count, std::uint32_t idCeiling);

/// A random permutation of a random subset of `pool`; non-empty unless allowEmpty.
tally::PreferenceBallot randomRanking(Rng &rng, const tally::CandidateSeq &pool, bool allowEmpty);

/// Full permutation of `pool`.
tally::PreferenceBallot randomFullRanking(Rng &rng, const tally::CandidateSeq &pool);

IrvInstance randomIrv(Rng &rng, std::size_t maxCandidates, std::size_t maxBallots);
BordaInstance randomBorda(Rng &rng, std::size_t maxCandidates, std::size_t maxBallots);
/// Roster of at least one candidate, non-empty ballots, seats <= roster.
StvInstance randomStv(Rng &rng, std::size_t maxCandidates, std::size_t maxBallots);
ScoreInstance randomScore(Rng &rng, std::size_t maxCandidates, std::size_t maxBallots);

/// Every permutation of every subset of `pool`, including the empty ranking.
std::vector<tally::PreferenceBallot> allRankings(const tally::CandidateSeq &pool);

/// Calls `visit` for every election whose roster is a subset of {1..maxCandidates}
/// and whose ballot sequence has at most `maxBallots` entries drawn from allRankings.
void forEachSmallIrvElection(std::size_t maxCandidates, std::size_t maxBallots,
                             const std::function<void(const IrvInstance &)> &visit);

std::string describe(const tally::PreferenceBallot &ballot);
std::string describe(const IrvInstance &instance);
std::string describe(const BordaInstance &instance);
std::string describe(const StvInstance &instance);
std::string describe(const ScoreInstance &instance);

}  // namespace evote::oracle
