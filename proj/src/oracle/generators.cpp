#include "evote/oracle/generators.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace evote::oracle {

using tally::CandidateId;
using tally::CandidateSeq;
using tally::PreferenceBallot;

namespace {

std::size_t uniform(Rng &rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

template <typename Container>
std::string joinIds(const Container &ids) {
  std::ostringstream os;
  bool first = true;
  for (CandidateId c : ids) {
    if (!first) os << ",";
    os << c.value;
    first = false;
  }
  return os.str();
}

}  // namespace

std::uint64_t instanceSeed(std::uint64_t runSeed, std::uint64_t index) {
  // splitmix64 finaliser
  std::uint64_t z = runSeed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

CandidateSeq randomRoster(Rng &rng, std::size_t count, std::uint32_t idCeiling) {
  std::vector<std::uint32_t> ids(idCeiling);
  std::iota(ids.begin(), ids.end(), 1U);
  std::shuffle(ids.begin(), ids.end(), rng);
  CandidateSeq roster;
  for (std::size_t i = 0; i < count && i < ids.size(); ++i) roster.emplace_back(ids[i]);
  return roster;
}

PreferenceBallot randomRanking(Rng &rng, const CandidateSeq &pool, bool allowEmpty) {
  PreferenceBallot ballot = pool;
  std::shuffle(ballot.begin(), ballot.end(), rng);
  if (pool.empty()) return ballot;
  ballot.resize(uniform(rng, allowEmpty ? 0 : 1, pool.size()));
  return ballot;
}

PreferenceBallot randomFullRanking(Rng &rng, const CandidateSeq &pool) {
  PreferenceBallot ballot = pool;
  std::shuffle(ballot.begin(), ballot.end(), rng);
  return ballot;
}

IrvInstance randomIrv(Rng &rng, std::size_t maxCandidates, std::size_t maxBallots) {
  auto roster = randomRoster(rng, uniform(rng, 0, maxCandidates), static_cast<std::uint32_t>(maxCandidates + 3));
  IrvInstance inst;
  inst.roster.insert(roster.begin(), roster.end());
  std::size_t n = uniform(rng, 0, maxBallots);
  for (std::size_t i = 0; i < n; ++i) inst.ballots.push_back(randomRanking(rng, roster, true));
  return inst;
}

BordaInstance randomBorda(Rng &rng, std::size_t maxCandidates, std::size_t maxBallots) {
  BordaInstance inst;
  inst.roster = randomRoster(rng, uniform(rng, 1, std::max<std::size_t>(1, maxCandidates)),
                             static_cast<std::uint32_t>(maxCandidates + 3));
  std::size_t n = uniform(rng, 0, maxBallots);
  // Half the instances use only full rankings, which makes ties more likely.
  bool full = uniform(rng, 0, 1) == 0;
  for (std::size_t i = 0; i < n; ++i) {
    inst.ballots.push_back(full ? randomFullRanking(rng, inst.roster) : randomRanking(rng, inst.roster, true));
  }
  inst.maxTiedPlacements = uniform(rng, 0, inst.roster.size() + 1);
  return inst;
}

StvInstance randomStv(Rng &rng, std::size_t maxCandidates, std::size_t maxBallots) {
  StvInstance inst;
  inst.roster = randomRoster(rng, uniform(rng, 1, std::max<std::size_t>(1, maxCandidates)),
                             static_cast<std::uint32_t>(maxCandidates + 3));
  inst.seats = uniform(rng, 0, inst.roster.size());
  std::size_t n = uniform(rng, 0, maxBallots);
  for (std::size_t i = 0; i < n; ++i) inst.ballots.push_back(randomRanking(rng, inst.roster, false));
  return inst;
}

ScoreInstance randomScore(Rng &rng, std::size_t maxCandidates, std::size_t maxBallots) {
  ScoreInstance inst;
  auto roster = randomRoster(rng, uniform(rng, 1, std::max<std::size_t>(1, maxCandidates)),
                             static_cast<std::uint32_t>(maxCandidates + 3));
  inst.roster.insert(roster.begin(), roster.end());
  inst.range.minScore = -static_cast<std::int64_t>(uniform(rng, 0, 3));
  inst.range.maxScore = inst.range.minScore + static_cast<std::int64_t>(uniform(rng, 0, 10));
  std::uniform_int_distribution<std::int64_t> score(inst.range.minScore, inst.range.maxScore);
  std::size_t n = uniform(rng, 0, maxBallots);
  for (std::size_t i = 0; i < n; ++i) {
    tally::ScoreBallot ballot;
    for (CandidateId c : roster) {
      if (uniform(rng, 0, 3) != 0) ballot[c] = score(rng);
    }
    inst.ballots.push_back(std::move(ballot));
  }
  return inst;
}

std::vector<PreferenceBallot> allRankings(const CandidateSeq &pool) {
  std::vector<PreferenceBallot> out;
  const std::size_t n = pool.size();
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    PreferenceBallot subset;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1U << i)) subset.push_back(pool[i]);
    }
    std::sort(subset.begin(), subset.end());
    do {
      out.push_back(subset);
    } while (std::next_permutation(subset.begin(), subset.end()));
  }
  return out;
}

void forEachSmallIrvElection(std::size_t maxCandidates, std::size_t maxBallots,
                             const std::function<void(const IrvInstance &)> &visit) {
  for (std::uint32_t mask = 0; mask < (1U << maxCandidates); ++mask) {
    IrvInstance inst;
    CandidateSeq pool;
    for (std::uint32_t i = 0; i < maxCandidates; ++i) {
      if (mask & (1U << i)) pool.emplace_back(i + 1);
    }
    inst.roster.insert(pool.begin(), pool.end());
    const auto rankings = allRankings(pool);

    // Odometer over ballot sequences of every length 0..maxBallots.
    for (std::size_t length = 0; length <= maxBallots; ++length) {
      std::vector<std::size_t> digits(length, 0);
      while (true) {
        inst.ballots.clear();
        for (std::size_t d : digits) inst.ballots.push_back(rankings[d]);
        visit(inst);

        std::size_t pos = 0;
        while (pos < length && ++digits[pos] == rankings.size()) digits[pos++] = 0;
        if (pos == length) break;
      }
    }
  }
}

std::string describe(const PreferenceBallot &ballot) { return "[" + joinIds(ballot) + "]"; }

namespace {

std::string describeBallots(const std::vector<PreferenceBallot> &ballots) {
  std::string out = "[";
  for (std::size_t i = 0; i < ballots.size(); ++i) {
    if (i) out += ",";
    out += describe(ballots[i]);
  }
  return out + "]";
}

}  // namespace

std::string describe(const IrvInstance &instance) {
  return "roster={" + joinIds(instance.roster) + "} ballots=" + describeBallots(instance.ballots);
}

std::string describe(const BordaInstance &instance) {
  return "roster=[" + joinIds(instance.roster) + "] ballots=" + describeBallots(instance.ballots) +
         " maxTiedPlacements=" + std::to_string(instance.maxTiedPlacements);
}

std::string describe(const StvInstance &instance) {
  return "roster=[" + joinIds(instance.roster) + "] ballots=" + describeBallots(instance.ballots) +
         " seats=" + std::to_string(instance.seats);
}

std::string describe(const ScoreInstance &instance) {
  std::ostringstream os;
  os << "roster={" << joinIds(instance.roster) << "} range=" << instance.range.minScore << ".."
     << instance.range.maxScore << " ballots=[";
  for (std::size_t i = 0; i < instance.ballots.size(); ++i) {
    if (i) os << ",";
    os << "{";
    bool first = true;
    for (const auto &[c, s] : instance.ballots[i]) {
      if (!first) os << ",";
      os << c.value << ":" << s;
      first = false;
    }
    os << "}";
  }
  os << "]";
  return os.str();
}

}  // namespace evote::oracle
