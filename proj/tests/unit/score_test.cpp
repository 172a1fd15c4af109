#include "doctest.h"
#include "evote/tally/errors.hpp"
#include "evote/tally/score.hpp"
#include "unit/support.hpp"

using namespace evote::tally;
using namespace evote::testing;

namespace {

ScoreBallot scores(std::initializer_list<std::pair<unsigned, std::int64_t>> entries) {
  ScoreBallot b;
  for (auto [c, s] : entries) b[CandidateId(c)] = s;
  return b;
}

}  // namespace

TEST_CASE("score voting sums per candidate") {
  std::vector<ScoreBallot> ballots{scores({{1, 5}}), scores({{2, 3}})};
  auto r = tallyScore(ballots, set({1, 2}), {0, 5});
  CHECK(r.totals == std::map<CandidateId, std::int64_t>{{1_c, 5}, {2_c, 3}});
  CHECK(r.winners == set({1}));
}

TEST_CASE("score voting reports the whole tied set") {
  std::vector<ScoreBallot> ballots{scores({{1, 5}, {2, 3}}), scores({{1, 2}, {2, 4}})};
  auto r = tallyScore(ballots, set({1, 2}), {0, 5});
  CHECK(r.totals.at(1_c) == 7);
  CHECK(r.totals.at(2_c) == 7);
  CHECK(r.winners == set({1, 2}));
}

TEST_CASE("score voting with no ballots ties everyone at zero") {
  auto r = tallyScore({}, set({1, 2}), {0, 5});
  CHECK(r.totals.at(1_c) == 0);
  CHECK(r.totals.at(2_c) == 0);
  CHECK(r.winners == set({1, 2}));
}

TEST_CASE("score voting with negative ranges") {
  std::vector<ScoreBallot> ballots{scores({{1, -2}, {2, -1}}), scores({{1, -1}})};
  auto r = tallyScore(ballots, set({1, 2}), {-2, 2});
  CHECK(r.totals.at(1_c) == -3);
  CHECK(r.totals.at(2_c) == -1);
  CHECK(r.winners == set({2}));
}

TEST_CASE("score voting rejects invalid input") {
  SUBCASE("unknown candidate") {
    std::vector<ScoreBallot> ballots{scores({{1, 1}}), scores({{3, 1}})};
    try {
      tallyScore(ballots, set({1, 2}), {0, 5});
      FAIL("expected PreconditionError");
    } catch (const PreconditionError &e) {
      CHECK(e.kind() == Violation::UnknownCandidate);
      CHECK(e.ballotIndex() == 1);
      CHECK(e.candidate() == 3_c);
    }
  }
  SUBCASE("score out of range") {
    std::vector<ScoreBallot> ballots{scores({{1, 6}})};
    try {
      tallyScore(ballots, set({1, 2}), {0, 5});
      FAIL("expected PreconditionError");
    } catch (const PreconditionError &e) {
      CHECK(e.kind() == Violation::OutOfRangeScore);
      CHECK(e.ballotIndex() == 0);
    }
  }
  SUBCASE("empty roster") {
    CHECK_THROWS_AS(tallyScore({}, {}, {0, 5}), PreconditionError);
  }
  SUBCASE("inverted range") {
    CHECK_THROWS_AS(tallyScore({}, set({1}), {5, 0}), PreconditionError);
  }
}
