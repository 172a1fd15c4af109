#pragma once

// Differential and invariant suites pitting evote::tally against the
// reference models. Used by `evote check` and by the test binaries.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evote/tally/outcome.hpp"

namespace evote::oracle {

struct CheckBounds {
  std::size_t candidates{6};          // random instances: max roster size
  std::size_t ballots{20};            // random IRV/Borda/Score: max ballots
  std::size_t stvBallots{12};         // random STV: max ballots
  std::size_t exhaustiveCandidates{3};
  std::size_t exhaustiveBallots{4};   // 3 x 4 enumerates in well under a minute
  std::size_t instances{10000};       // per random suite
};

/// Parses "key=value,key=value" with keys candidates, ballots, stv-ballots,
/// exhaustive-candidates, exhaustive-ballots, instances. `candidates` also
/// caps exhaustive-candidates. Throws std::invalid_argument.
CheckBounds parseBounds(std::string_view text);

/// The implementations under test. Defaults to evote::tally.
struct Subjects {
  std::function<tally::IrvResult(const tally::CandidateSet &, std::span<const tally::PreferenceBallot>)> irv;
  std::function<tally::BordaResult(const tally::CandidateSeq &, std::span<const tally::PreferenceBallot>,
                                   std::size_t)>
      borda;
  std::function<tally::StvResult(std::span<const tally::PreferenceBallot>, const tally::CandidateSeq &,
                                 std::size_t, const tally::StvObserver &)>
      stv;
  std::function<tally::ScoreResult(std::span<const tally::ScoreBallot>, const tally::CandidateSet &,
                                   tally::ScoreRange)>
      score;
};

Subjects coreSubjects();

/// Known-bad variants used to show the suites catch real defects.
/// "irv-single-elimination" drops only one tied-lowest candidate per round.
Subjects mutantSubjects(std::string_view mutation);
std::vector<std::string> mutationNames();

struct SuiteReport {
  std::string name;
  std::size_t instances{0};
  std::size_t violations{0};
  /// First failure: property, instance and how to replay it.
  std::string counterexample;

  bool passed() const { return violations == 0; }
};

SuiteReport checkIrvExhaustive(const CheckBounds &bounds, const Subjects &subjects);
SuiteReport checkIrvRandom(const CheckBounds &bounds, std::uint64_t seed, const Subjects &subjects);
SuiteReport checkStvContract(const CheckBounds &bounds, std::uint64_t seed, const Subjects &subjects);
SuiteReport checkStvFactors(const CheckBounds &bounds, std::uint64_t seed, const Subjects &subjects);
SuiteReport checkBorda(const CheckBounds &bounds, std::uint64_t seed, const Subjects &subjects);
SuiteReport checkScore(const CheckBounds &bounds, std::uint64_t seed, const Subjects &subjects);

struct CheckReport {
  std::vector<SuiteReport> suites;

  bool passed() const;
};

CheckReport runChecks(const CheckBounds &bounds, std::uint64_t seed, const Subjects &subjects = coreSubjects());

}  // namespace evote::oracle
