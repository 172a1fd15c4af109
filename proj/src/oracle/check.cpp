#include "evote/oracle/check.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>

#include "evote/oracle/generators.hpp"
#include "evote/oracle/reference.hpp"

namespace evote::oracle {

using tally::CandidateId;
using tally::CandidateSeq;
using tally::CandidateSet;
using tally::PreferenceBallot;

namespace {

std::size_t parseCount(std::string_view key, std::string_view value) {
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw std::invalid_argument("bound '" + std::string(key) + "' needs a non-negative integer, got '" +
                                std::string(value) + "'");
  }
  return out;
}

/// Records the first violation and counts the rest.
class Recorder {
 public:
  explicit Recorder(std::string name) { report_.name = std::move(name); }

  void instance() { ++report_.instances; }

  void fail(std::string_view property, const std::string &instance, const std::string &replay) {
    if (report_.violations++ == 0) {
      report_.counterexample = std::string(property) + ": " + instance + " (" + replay + ")";
    }
  }

  /// Returns `ok` so callers can chain.
  bool expect(bool ok, std::string_view property, const std::string &instance, const std::string &replay) {
    if (!ok) fail(property, instance, replay);
    return ok;
  }

  SuiteReport take() { return std::move(report_); }

 private:
  SuiteReport report_;
};

std::string replayTag(std::uint64_t seed, std::size_t index) {
  return "seed=" + std::to_string(seed) + " instance=" + std::to_string(index);
}

// --- mutants -------------------------------------------------------------

tally::IrvResult irvSingleElimination(const CandidateSet &roster, std::span<const PreferenceBallot> ballots) {
  tally::IrvResult result;
  if (ballots.empty()) return result;
  CandidateSet remaining = roster;
  std::vector<PreferenceBallot> current(ballots.begin(), ballots.end());
  while (!remaining.empty()) {
    auto counts = tally::firstPreferenceCounts(remaining, current);
    std::size_t nonEmpty = tally::countNonEmpty(current);
    for (const auto &[c, n] : counts) {
      if (2 * n > nonEmpty) {
        result.winner = c;
        return result;
      }
    }
    CandidateSet lowest = tally::lowestCandidates(remaining, current);
    CandidateSet one{*lowest.begin()};
    current = tally::removeCandidatesFromBallots(remaining, current, one);
    remaining.erase(*lowest.begin());
  }
  return result;
}

// --- IRV -----------------------------------------------------------------

/// Oracle agreement for one instance; returns the failed property or empty.
std::string irvOracleMismatch(const IrvInstance &inst, const tally::IrvResult &got) {
  std::size_t oracleWinners = 0;
  for (CandidateId c : inst.roster) {
    if (isWinnerIRV(c, inst.roster, inst.ballots)) ++oracleWinners;
  }
  if (oracleWinners > 1) return "oracle-at-most-one-winner";
  if (got.hasWinner()) {
    if (!inst.roster.contains(got.winner)) return "winner-in-roster";
    if (!isWinnerIRV(got.winner, inst.roster, inst.ballots)) return "oracle-confirms-winner";
  } else if (oracleWinners != 0) {
    return "oracle-confirms-no-winner";
  }
  return {};
}

}  // namespace

CheckBounds parseBounds(std::string_view text) {
  CheckBounds bounds;
  bool exhaustiveSet = false;
  while (!text.empty()) {
    auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string_view::npos) throw std::invalid_argument("bound '" + std::string(item) + "' lacks '='");
    std::string_view key = item.substr(0, eq);
    std::size_t value = parseCount(key, item.substr(eq + 1));
    if (key == "candidates") {
      bounds.candidates = value;
    } else if (key == "ballots") {
      bounds.ballots = value;
    } else if (key == "stv-ballots") {
      bounds.stvBallots = value;
    } else if (key == "exhaustive-candidates") {
      bounds.exhaustiveCandidates = value;
      exhaustiveSet = true;
    } else if (key == "exhaustive-ballots") {
      bounds.exhaustiveBallots = value;
    } else if (key == "instances") {
      bounds.instances = value;
    } else {
      throw std::invalid_argument("unknown bound '" + std::string(key) + "'");
    }
  }
  if (!exhaustiveSet) bounds.exhaustiveCandidates = std::min(bounds.exhaustiveCandidates, bounds.candidates);
  if (bounds.exhaustiveCandidates > 5) throw std::invalid_argument("exhaustive-candidates above 5 is impractical");
  return bounds;
}

Subjects coreSubjects() {
  Subjects s;
  s.irv = [](const CandidateSet &r, std::span<const PreferenceBallot> b) { return tally::instantRunoff(r, b); };
  s.borda = [](const CandidateSeq &r, std::span<const PreferenceBallot> b, std::size_t k) {
    return tally::tallyBorda(r, b, k);
  };
  s.stv = [](std::span<const PreferenceBallot> b, const CandidateSeq &r, std::size_t seats,
             const tally::StvObserver &obs) { return tally::singleTransferableVote(b, r, seats, obs); };
  s.score = [](std::span<const tally::ScoreBallot> b, const CandidateSet &r, tally::ScoreRange range) {
    return tally::tallyScore(b, r, range);
  };
  return s;
}

std::vector<std::string> mutationNames() { return {"irv-single-elimination"}; }

Subjects mutantSubjects(std::string_view mutation) {
  Subjects s = coreSubjects();
  if (mutation == "irv-single-elimination") {
    s.irv = irvSingleElimination;
  } else {
    throw std::invalid_argument("unknown mutation '" + std::string(mutation) + "'");
  }
  return s;
}

SuiteReport checkIrvExhaustive(const CheckBounds &bounds, const Subjects &subjects) {
  Recorder rec("irv-exhaustive");
  forEachSmallIrvElection(bounds.exhaustiveCandidates, bounds.exhaustiveBallots, [&](const IrvInstance &inst) {
    rec.instance();
    auto got = subjects.irv(inst.roster, inst.ballots);
    auto failed = irvOracleMismatch(inst, got);
    if (!failed.empty()) {
      rec.fail(failed, describe(inst) + " got winner " + std::to_string(got.winner.value), "exhaustive");
    }
  });
  return rec.take();
}

SuiteReport checkIrvRandom(const CheckBounds &bounds, std::uint64_t seed, const Subjects &subjects) {
  Recorder rec("irv-random");
  for (std::size_t i = 0; i < bounds.instances; ++i) {
    Rng rng(instanceSeed(seed, i));
    const auto tag = replayTag(seed, i);
    auto inst = randomIrv(rng, bounds.candidates, bounds.ballots);
    rec.instance();
    auto got = subjects.irv(inst.roster, inst.ballots);
    const auto where = describe(inst) + " got winner " + std::to_string(got.winner.value);

    if (got.hasWinner()) rec.expect(inst.roster.contains(got.winner), "winner-in-roster", where, tag);
    if (inst.ballots.empty()) rec.expect(!got.hasWinner(), "no-ballots-no-winner", where, tag);
    if (inst.roster.empty()) rec.expect(!got.hasWinner(), "no-roster-no-winner", where, tag);
    auto failed = irvOracleMismatch(inst, got);
    if (!failed.empty()) rec.fail(failed, where, tag);

    // Ballot order.
    auto shuffled = inst.ballots;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    rec.expect(subjects.irv(inst.roster, shuffled).winner == got.winner, "ballot-order-invariance", where, tag);

    // Candidate enumeration order: relabel through a random bijection.
    CandidateSeq from(inst.roster.begin(), inst.roster.end());
    CandidateSeq to = randomRoster(rng, from.size(), static_cast<std::uint32_t>(bounds.candidates + 20));
    std::map<CandidateId, CandidateId> relabel;
    for (std::size_t j = 0; j < from.size(); ++j) relabel[from[j]] = to[j];
    CandidateSet relabeledRoster(to.begin(), to.end());
    auto relabeledBallots = inst.ballots;
    for (auto &b : relabeledBallots) {
      for (auto &c : b) c = relabel.at(c);
    }
    auto renamed = subjects.irv(relabeledRoster, relabeledBallots).winner;
    CandidateId expected = got.hasWinner() ? relabel.at(got.winner) : tally::kNoWinner;
    rec.expect(renamed == expected, "roster-order-invariance", where, tag);
  }
  return rec.take();
}

namespace {

struct StvRun {
  tally::StvResult result;
  std::vector<tally::StvRoundState> states;
};

StvRun runStv(const Subjects &subjects, const StvInstance &inst) {
  StvRun run;
  run.result = subjects.stv(inst.ballots, inst.roster, inst.seats,
                            [&](const tally::StvRoundState &s) { run.states.push_back(s); });
  return run;
}

bool sameState(const tally::StvRoundState &core, const StvState &ref) {
  return core.ballots == ref.ballots && core.factors == ref.factors && core.roster == ref.roster &&
         core.elected == ref.elected && core.autofilled == ref.autofilled;
}

}  // namespace

SuiteReport checkStvContract(const CheckBounds &bounds, std::uint64_t seed, const Subjects &subjects) {
  Recorder rec("stv-contract");
  for (std::size_t i = 0; i < bounds.instances; ++i) {
    Rng rng(instanceSeed(seed, i));
    const auto tag = replayTag(seed, i);
    auto inst = randomStv(rng, bounds.candidates, bounds.stvBallots);
    rec.instance();
    auto run = runStv(subjects, inst);
    const auto &r = run.result;
    const auto where = describe(inst);

    const std::size_t quota = referenceQuota(inst.ballots.size(), inst.seats);
    rec.expect(r.quota == Rational(static_cast<std::int64_t>(quota)), "droop-quota", where, tag);
    rec.expect(r.elected.size() + r.autofilled.size() == inst.seats, "seat-accounting", where, tag);

    CandidateSet seated;
    bool membersOk = true;
    for (CandidateId c : r.elected) membersOk &= seated.insert(c).second;
    for (CandidateId c : r.autofilled) membersOk &= seated.insert(c).second;
    rec.expect(membersOk, "disjoint-no-duplicates", where, tag);
    rec.expect(std::all_of(seated.begin(), seated.end(),
                           [&](CandidateId c) {
                             return std::find(inst.roster.begin(), inst.roster.end(), c) != inst.roster.end();
                           }),
               "membership", where, tag);

    for (CandidateId c : r.elected) {
      bool supported = std::any_of(inst.ballots.begin(), inst.ballots.end(), [&](const PreferenceBallot &b) {
        return std::find(b.begin(), b.end(), c) != b.end();
      });
      rec.expect(supported, "winner-support", where, tag);
    }

    rec.expect(r.witnesses.size() == r.elected.size(), "witness-count", where, tag);
    for (std::size_t w = 0; w < r.witnesses.size() && w < r.elected.size(); ++w) {
      const auto &t = r.witnesses[w];
      rec.expect(tally::calculateTotalValue(t.ballots, t.roster, t.factors, r.elected[w]) >= r.quota,
                 "quota-witness", where, tag);
    }

    // Droop: with unit factors at most `seats` candidates can reach the quota.
    std::size_t atQuota = 0;
    for (CandidateId c : inst.roster) {
      std::size_t firsts = std::count_if(inst.ballots.begin(), inst.ballots.end(),
                                         [&](const PreferenceBallot &b) { return b.front() == c; });
      if (firsts >= quota) ++atQuota;
    }
    rec.expect(atQuota <= inst.seats, "droop-capacity", where, tag);

    // Replay round by round against the reference step.
    StvState ref{inst.ballots, FactorList(inst.ballots.size(), Rational(1)), inst.roster, {}, {}};
    bool replayOk = !run.states.empty() && sameState(run.states.front(), ref);
    for (std::size_t s = 1; replayOk && s < run.states.size(); ++s) {
      auto step = referenceStvStep(ref, quota, inst.seats);
      if (step.classification == StvClassification::Done) {
        replayOk = false;
        break;
      }
      ref = step.next;
      replayOk = sameState(run.states[s], ref);
    }
    if (replayOk) {
      replayOk = referenceStvStep(ref, quota, inst.seats).classification == StvClassification::Done;
    }
    replayOk = replayOk && ref.elected == r.elected && ref.autofilled == r.autofilled;
    rec.expect(replayOk, "reference-replay", where, tag);
  }
  return rec.take();
}

SuiteReport checkStvFactors(const CheckBounds &bounds, std::uint64_t seed, const Subjects &subjects) {
  Recorder rec("stv-factors");
  const Rational zero(0);
  const Rational one(1);
  for (std::size_t i = 0; i < bounds.instances; ++i) {
    Rng rng(instanceSeed(seed, i));
    const auto tag = replayTag(seed, i);
    auto inst = randomStv(rng, bounds.candidates, bounds.stvBallots);
    rec.instance();
    auto run = runStv(subjects, inst);
    const auto where = describe(inst);
    const Rational quota = run.result.quota;

    for (const auto &state : run.states) {
      rec.expect(state.ballots.size() == state.factors.size(), "ballot-factor-length", where, tag);
      for (const auto &f : state.factors) rec.expect(f > zero && f <= one, "factor-in-unit-interval", where, tag);
    }

    for (std::size_t s = 0; s + 1 < run.states.size(); ++s) {
      const auto &before = run.states[s];
      const auto &after = run.states[s + 1];
      if (after.roster.size() + 1 != before.roster.size()) continue;  // autofill: no transfer

      CandidateId chosen;
      for (CandidateId c : before.roster) {
        if (std::find(after.roster.begin(), after.roster.end(), c) == after.roster.end()) chosen = c;
      }
      const bool elected = after.elected.size() > before.elected.size();
      Rational value;
      std::int64_t supporters = 0;
      for (std::size_t b = 0; b < before.ballots.size(); ++b) {
        if (before.ballots[b].front() == chosen) {
          value += before.factors[b];
          ++supporters;
        }
      }
      if (elected && supporters > 0) {
        rec.expect((value - quota) / Rational(supporters) < one, "surplus-multiplier-below-one", where, tag);
      }

      // Follow each surviving ballot into the next round.
      std::size_t next = 0;
      bool lineageOk = true;
      for (std::size_t b = 0; b < before.ballots.size(); ++b) {
        const auto &ballot = before.ballots[b];
        PreferenceBallot rest;
        std::copy_if(ballot.begin(), ballot.end(), std::back_inserter(rest), [&](CandidateId c) { return c != chosen; });
        bool zeroed = elected && ballot.front() == chosen && value == quota;
        if (rest.empty() || zeroed) continue;
        if (next >= after.ballots.size() || after.ballots[next] != rest) {
          lineageOk = false;
          break;
        }
        rec.expect(after.factors[next] <= before.factors[b], "factor-non-increasing", where, tag);
        ++next;
      }
      rec.expect(lineageOk && next == after.ballots.size(), "ballot-lineage", where, tag);
    }
  }
  return rec.take();
}

SuiteReport checkBorda(const CheckBounds &bounds, std::uint64_t seed, const Subjects &subjects) {
  Recorder rec("borda");
  for (std::size_t i = 0; i < bounds.instances; ++i) {
    Rng rng(instanceSeed(seed, i));
    const auto tag = replayTag(seed, i);
    auto inst = randomBorda(rng, bounds.candidates, bounds.ballots);
    rec.instance();
    auto got = subjects.borda(inst.roster, inst.ballots, inst.maxTiedPlacements);
    auto want = referenceBorda(inst.roster, inst.ballots, inst.maxTiedPlacements);
    const auto where = describe(inst) + " got winner " + std::to_string(got.winner.value);

    rec.expect(got.winner == want.winner, "reference-winner", where, tag);
    rec.expect(got.standings == want.standings, "reference-standings", where, tag);
    rec.expect(got.trace == want.trace, "reference-trace", where, tag);
    rec.expect(got.trace.size() <= inst.roster.size(), "baldwin-terminates", where, tag);
    if (got.hasWinner()) {
      rec.expect(std::find(inst.roster.begin(), inst.roster.end(), got.winner) != inst.roster.end(),
                 "winner-in-roster", where, tag);
    }

    // Conservation: one full ranking hands out n(n+1)/2 points.
    const auto ballot = randomFullRanking(rng, inst.roster);
    const std::vector<PreferenceBallot> single{ballot};
    auto points = tally::bordaPoints(inst.roster, single);
    std::uint64_t sum = 0;
    for (const auto &[c, p] : points) sum += p;
    const std::uint64_t n = inst.roster.size();
    rec.expect(sum == n * (n + 1) / 2, "full-ballot-conservation", describe(inst) + " ballot " + describe(ballot), tag);
  }
  return rec.take();
}

SuiteReport checkScore(const CheckBounds &bounds, std::uint64_t seed, const Subjects &subjects) {
  Recorder rec("score");
  for (std::size_t i = 0; i < bounds.instances; ++i) {
    Rng rng(instanceSeed(seed, i));
    const auto tag = replayTag(seed, i);
    auto inst = randomScore(rng, bounds.candidates, bounds.ballots);
    rec.instance();
    auto got = subjects.score(inst.ballots, inst.roster, inst.range);
    const auto where = describe(inst);
    rec.expect(got.winners == referenceScoreWinners(inst.ballots, inst.roster), "argmax-winners", where, tag);

    auto padded = inst.ballots;
    padded.emplace_back();  // implicit zeros
    if (inst.range.minScore <= 0 && inst.range.maxScore >= 0) {
      tally::ScoreBallot zeros;
      for (CandidateId c : inst.roster) zeros[c] = 0;
      padded.push_back(zeros);
    }
    rec.expect(subjects.score(padded, inst.roster, inst.range).winners == got.winners, "zero-ballot-neutral", where,
               tag);
  }
  return rec.take();
}

bool CheckReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteReport &s) { return s.passed(); });
}

CheckReport runChecks(const CheckBounds &bounds, std::uint64_t seed, const Subjects &subjects) {
  CheckReport report;
  report.suites.push_back(checkIrvExhaustive(bounds, subjects));
  report.suites.push_back(checkIrvRandom(bounds, seed, subjects));
  report.suites.push_back(checkStvContract(bounds, seed, subjects));
  report.suites.push_back(checkStvFactors(bounds, seed, subjects));
  report.suites.push_back(checkBorda(bounds, seed, subjects));
  report.suites.push_back(checkScore(bounds, seed, subjects));
  return report;
}

}  // namespace evote::oracle
