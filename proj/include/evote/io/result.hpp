#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evote/io/ballots.hpp"
#include "evote/io/definition.hpp"
#include "evote/tally/outcome.hpp"
#include "json.hpp"

namespace evote::io {

/// Runs the core algorithm selected by the definition. PreconditionError
/// from the core propagates unchanged.
tally::TallyOutcome tallyElection(const ElectionDefinition &definition, const BallotFile &ballots);

Method methodOf(const tally::TallyOutcome &outcome);

/// Tallies of every remaining candidate in the state where `candidate` was
/// elected by quota.
struct WitnessSummary {
  tally::CandidateId candidate;
  std::map<tally::CandidateId, Rational> tallies;
  friend bool operator==(const WitnessSummary &, const WitnessSummary &) = default;
};

/// The published form of a result. Only the fields of `method` are meaningful.
struct ResultDocument {
  Method method{Method::Irv};
  /// irv, borda; nullopt is "no winner".
  std::optional<tally::CandidateId> winner;
  /// score: every candidate sharing the top total.
  std::vector<tally::CandidateId> winners;
  /// score totals or final borda standings.
  std::map<tally::CandidateId, std::int64_t> totals;
  std::size_t seats{0};
  Rational quota;
  std::vector<tally::CandidateId> elected;
  std::vector<tally::CandidateId> autofilled;
  std::vector<WitnessSummary> witnesses;
  std::optional<tally::RoundTrace> rounds;

  friend bool operator==(const ResultDocument &, const ResultDocument &) = default;
};

ResultDocument toDocument(const tally::TallyOutcome &outcome, bool includeTrace = false);

nlohmann::ordered_json resultToJson(const ResultDocument &document);
/// Throws ParseError on malformed input.
ResultDocument resultFromJson(const nlohmann::json &json);

/// Stable text: JSON with fixed key order, two-space indent, trailing newline.
std::string serializeResult(const tally::TallyOutcome &outcome, bool includeTrace = false);
std::string serializeResult(const ResultDocument &document);
ResultDocument parseResult(std::string_view text);

}  // namespace evote::io
