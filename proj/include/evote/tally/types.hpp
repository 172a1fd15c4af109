#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <vector>

#include "evote/rational.hpp"

namespace evote::tally {

/// Candidates are natural numbers >= 1. The value 0 is reserved for the
/// "no winner" result and never appears in a roster or on a ballot.
struct CandidateId {
  std::uint32_t value{0};

  constexpr CandidateId() = default;
  constexpr explicit CandidateId(std::uint32_t v) : value(v) {}

  constexpr bool isNoWinner() const { return value == 0; }

  friend constexpr auto operator<=>(CandidateId, CandidateId) = default;
  friend std::ostream &operator<<(std::ostream &os, CandidateId c) { return os << c.value; }
};

inline constexpr CandidateId kNoWinner{};

/// Ranked ballot, most-preferred first. Entries are distinct.
using PreferenceBallot = std::vector<CandidateId>;
using ScoreBallot = std::map<CandidateId, std::int64_t>;

/// Unordered roster used by Score and IRV; the set representation makes the
/// result independent of any candidate enumeration order.
using CandidateSet = std::set<CandidateId>;
/// Ordered roster used by Borda and STV; order decides STV ties.
using CandidateSeq = std::vector<CandidateId>;

/// Per-ballot STV transfer values, index-aligned with the ballot sequence.
using FactorList = std::vector<Rational>;

struct ScoreRange {
  std::int64_t minScore{0};
  std::int64_t maxScore{0};
};

namespace literals {
constexpr CandidateId operator""_c(unsigned long long v) { return CandidateId(static_cast<std::uint32_t>(v)); }
}  // namespace literals

}  // namespace evote::tally
