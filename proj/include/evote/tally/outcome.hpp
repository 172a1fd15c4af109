#pragma once

#include <variant>

#include "evote/tally/borda.hpp"
#include "evote/tally/irv.hpp"
#include "evote/tally/score.hpp"
#include "evote/tally/stv.hpp"

namespace evote::tally {

using TallyOutcome = std::variant<ScoreResult, IrvResult, BordaResult, StvResult>;

}  // namespace evote::tally
