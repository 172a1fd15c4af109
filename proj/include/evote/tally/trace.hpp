#pragma once

#include <map>
#include <string_view>
#include <vector>

#include "evote/rational.hpp"
#include "evote/tally/types.hpp"

namespace evote::tally {

enum class RoundAction { Elect, Eliminate, Autofill, MajorityWin, NoWinner };

std::string_view name(RoundAction a);

/// One tallying round, recorded for auditing. Derived data only; never read
/// back by the algorithms.
struct Round {
  std::map<CandidateId, Rational> tallies;
  RoundAction action{RoundAction::Eliminate};
  std::vector<CandidateId> affected;

  friend bool operator==(const Round &, const Round &) = default;
};

using RoundTrace = std::vector<Round>;

}  // namespace evote::tally
