#pragma once

#include <vector>

#include "evote/tally/types.hpp"

namespace evote::testing {

using namespace evote::tally::literals;

inline std::vector<tally::PreferenceBallot> ballots(std::initializer_list<std::initializer_list<unsigned>> rows) {
  std::vector<tally::PreferenceBallot> out;
  for (const auto &row : rows) {
    tally::PreferenceBallot b;
    for (unsigned c : row) b.emplace_back(c);
    out.push_back(std::move(b));
  }
  return out;
}

inline tally::CandidateSet set(std::initializer_list<unsigned> ids) {
  tally::CandidateSet out;
  for (unsigned c : ids) out.emplace(c);
  return out;
}

inline tally::CandidateSeq seq(std::initializer_list<unsigned> ids) {
  tally::CandidateSeq out;
  for (unsigned c : ids) out.emplace_back(c);
  return out;
}

inline std::vector<Rational> ratios(std::initializer_list<std::pair<long, long>> values) {
  std::vector<Rational> out;
  for (auto [n, d] : values) out.emplace_back(n, d);
  return out;
}

}  // namespace evote::testing
