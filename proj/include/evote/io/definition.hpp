#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evote/tally/types.hpp"
#include "json.hpp"

namespace evote::io {

enum class Method { Score, Irv, Borda, Stv };

std::string_view name(Method method);
std::optional<Method> parseMethod(std::string_view text);
/// Score ballots map ids to scores; the other methods take rankings.
inline bool isRanked(Method method) { return method != Method::Score; }

struct Candidate {
  tally::CandidateId id;
  std::string name;
  friend bool operator==(const Candidate &, const Candidate &) = default;
};

/// Candidates are listed in roster order with ids 1..n. Each optional
/// parameter is set exactly when the method uses it. Score bounds lie
/// within +/-1e9.
struct ElectionDefinition {
  Method method{Method::Irv};
  std::vector<Candidate> candidates;
  std::optional<std::int64_t> minScore;
  std::optional<std::int64_t> maxScore;
  std::optional<std::size_t> maxTiedPlacements;
  std::optional<std::size_t> seats;

  tally::CandidateSeq roster() const;
  tally::CandidateSet rosterSet() const;
  tally::ScoreRange range() const;
  bool hasCandidate(tally::CandidateId id) const;
  friend bool operator==(const ElectionDefinition &, const ElectionDefinition &) = default;
};

/// Checks the definition invariants. Throws ParseError with a single
/// diagnostic (line 0) naming the first problem.
void validateDefinition(const ElectionDefinition &definition);

/// Line-oriented text:
///   # comment
///   method: stv
///   seats: 2
///   candidate: 1 Alice Smith
/// Keys: method, candidate, seats, min-score, max-score, max-tied-placements.
/// Throws ParseError.
ElectionDefinition parseElection(std::string_view text);

/// Canonical text: method, parameters, then candidates in roster order.
std::string serializeElection(const ElectionDefinition &definition);

/// {"method":"stv","seats":2,"candidates":[{"id":1,"name":"Alice"},...]}.
/// On input, candidates may also be plain names, numbered from 1.
nlohmann::ordered_json definitionToJson(const ElectionDefinition &definition);
/// Throws ParseError.
ElectionDefinition definitionFromJson(const nlohmann::json &json);

}  // namespace evote::io
