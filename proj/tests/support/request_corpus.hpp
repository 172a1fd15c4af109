#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "httplib.h"

namespace evote::testing {

/// One scripted request. Elections and tokens are referred to by position so
/// the same script can run against independent deployments.
struct ScriptedRequest {
  enum class Op { Create, Register, Cast, Close, GetElection, GetResult } op;
  std::size_t election{0};
  /// Cast: index of the voter whose token is used; npos for a forged token.
  std::size_t voter{0};
  std::string body;
};

/// Mixed valid and invalid traffic over several elections of every method,
/// exactly `size` requests long.
std::vector<ScriptedRequest> requestCorpus(std::uint64_t seed, std::size_t size);

struct Observed {
  int status{0};
  /// "error" and "kind" of an error body, or the body of a tally result.
  std::string outcome;
  friend bool operator==(const Observed &, const Observed &) = default;
};

std::vector<Observed> runCorpus(httplib::Client &client, const std::vector<ScriptedRequest> &script);

}  // namespace evote::testing
