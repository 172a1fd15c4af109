#include "evote/tally/trace.hpp"

namespace evote::tally {

std::string_view name(RoundAction a) {
  switch (a) {
    case RoundAction::Elect: return "elect";
    case RoundAction::Eliminate: return "eliminate";
    case RoundAction::Autofill: return "autofill";
    case RoundAction::MajorityWin: return "majority-win";
    case RoundAction::NoWinner: return "no-winner";
  }
  return "unknown";
}

}  // namespace evote::tally
