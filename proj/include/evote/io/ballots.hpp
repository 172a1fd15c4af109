#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evote/io/definition.hpp"
#include "evote/io/diagnostic.hpp"
#include "evote/tally/types.hpp"

namespace evote::io {

/// Ballots of one election in input order. Only the member matching
/// `method` is populated.
struct BallotFile {
  Method method{Method::Irv};
  std::vector<tally::PreferenceBallot> rankings;
  std::vector<tally::ScoreBallot> scores;

  std::size_t size() const { return isRanked(method) ? rankings.size() : scores.size(); }
  friend bool operator==(const BallotFile &, const BallotFile &) = default;
};

enum class ParseMode { Strict, Lenient };

struct ParsedBallots {
  BallotFile ballots;
  /// Lenient mode only; strict mode throws instead.
  std::vector<Diagnostic> diagnostics;
};

/// Line-oriented text:
///   method: irv
///   1,3,2
///   -            (empty ballot)
///   1=5,2=3      (score ballot; "-" for no scores)
/// Blank lines and lines starting with '#' are ignored. The header must
/// name the definition's method.
///
/// Strict mode throws ParseError listing every bad record; lenient mode drops
/// bad records and reports them. Header problems always throw.
ParsedBallots parseBallots(std::string_view text, const ElectionDefinition &definition,
                           ParseMode mode = ParseMode::Strict);

std::string serializeBallots(const BallotFile &ballots);

/// Ballot rule violated by a ranking or score map under `definition`, if any.
/// Independent of the tally core; used to screen input before tallying.
struct BallotIssue {
  ErrorKind kind;
  std::string message;
  friend bool operator==(const BallotIssue &, const BallotIssue &) = default;
};
std::optional<BallotIssue> checkRanking(const tally::PreferenceBallot &ballot, const ElectionDefinition &definition);
std::optional<BallotIssue> checkScores(const tally::ScoreBallot &ballot, const ElectionDefinition &definition);

}  // namespace evote::io
