// One PASS/FAIL line per acceptance criterion. Exit status is non-zero if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "evote/io/result.hpp"
#include "evote/oracle/check.hpp"
#include "evote/oracle/generators.hpp"
#include "evote/tally/errors.hpp"
#include "evote/tally/stv.hpp"
#include "json.hpp"
#include "support/corpus.hpp"
#include "support/request_corpus.hpp"
#include "support/temp_dir.hpp"
#include "support/test_server.hpp"

using namespace evote;
using Json = nlohmann::json;

namespace {

constexpr std::uint64_t kSeed = 20240101;
constexpr std::size_t kRandomInstances = 10000;
constexpr double kExhaustiveBudgetSeconds = 60.0;
constexpr std::size_t kIoFiles = 1000;
constexpr std::size_t kMixedRequests = 500;

struct Verdict {
  bool ok{true};
  std::string detail;

  void require(bool condition, const std::string &what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(const char *name, const std::function<Verdict()> &body) {
  Verdict v;
  try {
    v = body();
  } catch (const std::exception &e) {
    v = {false, std::string("exception: ") + e.what()};
  }
  if (!v.ok) ++failures;
  std::printf("%s  %-28s %s\n", v.ok ? "PASS" : "FAIL", name, v.detail.c_str());
  std::fflush(stdout);
}

Verdict fromSuites(std::initializer_list<oracle::SuiteReport> suites) {
  Verdict v;
  std::ostringstream summary;
  for (const auto &s : suites) {
    v.require(s.passed(), s.name + ": " + s.counterexample);
    summary << s.name << " " << s.instances << " instances, " << s.violations << " violations; ";
  }
  if (v.ok) v.detail = summary.str();
  return v;
}

oracle::CheckBounds randomBounds() {
  oracle::CheckBounds b;
  b.candidates = 6;
  b.ballots = 20;
  b.stvBallots = 12;
  b.instances = kRandomInstances;
  return b;
}

tally::PreferenceBallot rank(std::initializer_list<unsigned> ids) {
  tally::PreferenceBallot b;
  for (unsigned c : ids) b.emplace_back(c);
  return b;
}

Json post(httplib::Client &c, const std::string &path, const Json &body, int expected, Verdict &v) {
  auto res = c.Post(path, body.dump(), "application/json");
  v.require(res && res->status == expected, "POST " + path + " expected " + std::to_string(expected) + ", got " +
                                                (res ? std::to_string(res->status) + " " + res->body : "no reply"));
  return res ? Json::parse(res->body, nullptr, false) : Json();
}

Verdict irvExhaustive() {
  oracle::CheckBounds b;
  b.exhaustiveCandidates = 3;
  b.exhaustiveBallots = 4;
  auto start = std::chrono::steady_clock::now();
  auto report = oracle::checkIrvExhaustive(b, oracle::coreSubjects());
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Verdict v = fromSuites({report});
  // Roster subsets of {1,2,3} with up to 4 ballots from all rankings of the subset.
  v.require(report.instances == 72346, "expected 72346 instances, saw " + std::to_string(report.instances));
  v.require(seconds < kExhaustiveBudgetSeconds, "took " + std::to_string(seconds) + " s");
  if (v.ok) v.detail += std::to_string(seconds) + " s";
  return v;
}

Verdict stvWorkedExample() {
  Verdict v;
  const std::vector<tally::PreferenceBallot> ballots = {rank({1}), rank({1}), rank({1}), rank({2}), rank({3})};
  auto r = tally::singleTransferableVote(ballots, rank({1, 2, 3}), 2);
  v.require(r.quota == Rational(2), "quota " + r.quota.toString());
  v.require(r.elected == rank({1}), "elected");
  v.require(r.autofilled == rank({3}), "autofilled");
  v.require(r.witnesses.size() == 1, "witness count");
  if (v.ok) {
    const auto &w = r.witnesses[0];
    v.require(w.ballots == ballots && w.factors == tally::FactorList(5, Rational(1)) && w.roster == rank({1, 2, 3}),
              "witness triple");
    v.require(tally::calculateTotalValue(w.ballots, w.roster, w.factors, tally::CandidateId(1)) == Rational(3),
              "witness value");
  }
  // Hand trace: elect 1 (3 >= 2, surplus 1/3 per ballot but nothing to transfer),
  // eliminate 2 on the roster-order tie 1 = 1, autofill 3.
  v.require(r.trace.size() == 3, "trace length");
  if (v.ok) {
    v.require(r.trace[0].action == tally::RoundAction::Elect && r.trace[0].affected == rank({1}), "round 1");
    v.require(r.trace[1].action == tally::RoundAction::Eliminate && r.trace[1].affected == rank({2}), "round 2");
    v.require(r.trace[1].tallies == std::map<tally::CandidateId, Rational>{{tally::CandidateId(2), Rational(1)},
                                                                          {tally::CandidateId(3), Rational(1)}},
              "round 2 tallies");
    v.require(r.trace[2].action == tally::RoundAction::Autofill && r.trace[2].affected == rank({3}), "round 3");
  }
  if (v.ok) v.detail = "W=[1] Rest=[3] q=2, one witness";
  return v;
}

Verdict ballotIo() {
  Verdict v;
  oracle::Rng rng(kSeed);
  std::size_t rejected = 0;
  for (std::size_t i = 0; i < kIoFiles && v.ok; ++i) {
    auto file = testing::randomCorpusFile(rng);
    auto def = io::parseElection(file.definitionText);
    v.require(def == file.definition, "definition parse, file " + std::to_string(i));
    v.require(io::parseElection(io::serializeElection(def)) == def, "definition round-trip, file " + std::to_string(i));
    auto parsed = io::parseBallots(file.ballotText, def, io::ParseMode::Strict).ballots;
    v.require(parsed == file.ballots, "ballot parse, file " + std::to_string(i));
    v.require(io::parseBallots(io::serializeBallots(parsed), def).ballots == parsed,
              "ballot round-trip, file " + std::to_string(i));

    for (auto kind : {io::ErrorKind::DuplicateInBallot, io::ErrorKind::UnknownCandidate, io::ErrorKind::EmptyBallot,
                      io::ErrorKind::OutOfRangeScore}) {
      auto bad = testing::injectViolation(rng, file, kind);
      if (!bad) continue;
      const std::string where = std::string(io::name(kind)) + " in file " + std::to_string(i);
      try {
        io::parseBallots(bad->ballotText, def, io::ParseMode::Strict);
        v.require(false, "strict mode accepted " + where);
      } catch (const io::ParseError &e) {
        v.require(e.kind() == kind, "wrong kind for " + where);
        ++rejected;
      }
      // The core refuses the same ballot on its own.
      io::BallotFile single{def.method, {}, {}};
      if (bad->ranking) single.rankings.push_back(*bad->ranking);
      if (bad->scores) single.scores.push_back(*bad->scores);
      if (single.size() == 0) continue;
      try {
        io::tallyElection(def, single);
        v.require(false, "core accepted " + where);
      } catch (const tally::PreconditionError &e) {
        v.require(io::fromViolation(e.kind()) == kind, "core reported another violation for " + where);
      }
    }
  }
  if (v.ok) v.detail = std::to_string(kIoFiles) + " files, " + std::to_string(rejected) + " violating files rejected";
  return v;
}

Verdict serviceEndToEnd() {
  Verdict v;
  {
    testing::TestServer server(service::EnforcementMode::Precheck);
    auto c = server.client();
    auto created = post(c, "/elections",
                        {{"method", "stv"}, {"seats", 2}, {"candidates", {"Alice", "Bob", "Carol", "Dan"}}}, 201, v);
    if (!v.ok) return v;
    const std::string base = "/elections/" + created["id"].get<std::string>();
    std::vector<std::string> tokens;
    for (const char *who : {"ann@example.org", "bob@example.org", "cy@example.org"}) {
      tokens.push_back(post(c, base + "/voters", {{"contact", who}}, 201, v).value("token", ""));
    }
    // Five cast requests from three single-use tokens: a refused ballot keeps
    // its token, a spent token is refused.
    post(c, base + "/ballots", {{"token", tokens[0]}, {"ranking", {2, 2}}}, 400, v);
    post(c, base + "/ballots", {{"token", tokens[0]}, {"ranking", {2, 1}}}, 201, v);
    post(c, base + "/ballots", {{"token", tokens[1]}, {"ranking", {1, 3}}}, 201, v);
    post(c, base + "/ballots", {{"token", tokens[2]}, {"ranking", {4, 1, 2}}}, 201, v);
    post(c, base + "/ballots", {{"token", tokens[1]}, {"ranking", {3}}}, 409, v);
    auto result = post(c, base + "/close", Json::object(), 200, v);
    if (!v.ok) return v;
    const std::string id = created["id"];
    auto direct = io::resultToJson(io::toDocument(
        io::tallyElection(server.service().getElection(id).definition, server.service().exportBallots(id)), true));
    v.require(Json::parse(direct.dump()) == result, "service result differs from the core on exported ballots");
    v.require(server.service().exportBallots(id).rankings.size() == 3, "exported ballot count");
  }

  const auto script = testing::requestCorpus(kSeed, kMixedRequests);
  v.require(script.size() == kMixedRequests, "corpus size");
  testing::TestServer precheck(service::EnforcementMode::Precheck);
  testing::TestServer halt(service::EnforcementMode::Halt);
  auto pc = precheck.client();
  auto hc = halt.client();
  auto a = testing::runCorpus(pc, script);
  auto b = testing::runCorpus(hc, script);
  std::size_t rejected = 0;
  for (std::size_t i = 0; i < a.size() && v.ok; ++i) {
    v.require(a[i] == b[i], "request " + std::to_string(i) + ": precheck " + std::to_string(a[i].status) + " " +
                                a[i].outcome + " vs halt " + std::to_string(b[i].status) + " " + b[i].outcome);
    if (a[i].status >= 400) ++rejected;
  }
  if (v.ok) {
    v.detail = "5 casts, result matches core; " + std::to_string(a.size()) + " requests agree across modes (" +
               std::to_string(rejected) + " rejected)";
  }
  return v;
}

std::string slurp(const std::filesystem::path &p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Verdict invalidationFlow() {
  Verdict v;
  for (auto mode : {service::EnforcementMode::Precheck, service::EnforcementMode::Halt}) {
    testing::TempDir dir("evote-acceptance");
    service::ServiceOptions options;
    options.storeDirectory = dir / "store";
    options.outboxDirectory = dir / "outbox";
    options.enforcement = mode;

    std::string id;
    std::uint64_t seq = 0;
    {
      service::ElectionService svc(options);
      io::ElectionDefinition def;
      def.method = io::Method::Irv;
      def.candidates = {{tally::CandidateId(1), "Alice"}, {tally::CandidateId(2), "Bob"}};
      id = svc.createElection(def).id;
      svc.castBallot(id, svc.registerVoter(id, "ann@example.org"), rank({1}));
      svc.castBallot(id, svc.registerVoter(id, "bob@example.org"), rank({2, 1}));
      svc.registerVoter(id, "cy@example.org");
      seq = svc.store().sequence();
    }
    // Fault injection: a stored ballot that never passed cast-time screening.
    std::ofstream(options.storeDirectory / "events.jsonl", std::ios::app)
        << Json{{"seq", seq + 1}, {"type", "ballot-accepted"}, {"election", id}, {"index", 2},
                {"ballot", {{"ranking", {1, 1}}}}}.dump()
        << "\n";

    service::ElectionService svc(options);
    const std::string where = std::string(service::name(mode)) + ": ";
    try {
      svc.closeAndTally(id);
      v.require(false, where + "tally succeeded");
    } catch (const service::ServiceError &e) {
      v.require(e.code() == service::ErrorCode::ValidationFailure, where + "wrong error " + e.what());
    }
    auto notices = svc.outbox().records();
    v.require(notices.size() == 3, where + std::to_string(notices.size()) + " outbox records for 3 voters");
    std::set<std::string> recipients;
    for (const auto &n : notices) recipients.insert(n.recipient);
    v.require(recipients.size() == 3, where + "duplicate notices");
    v.require(!svc.store().find(id) && svc.store().tombstone(id), where + "election still stored");
    std::string persisted;
    for (const auto &entry : std::filesystem::directory_iterator(options.storeDirectory)) {
      persisted += slurp(entry.path());
    }
    for (const char *trace : {"ranking", "ann@example.org", "Alice"}) {
      v.require(persisted.find(trace) == std::string::npos, where + "store still holds " + trace);
    }
    try {
      svc.invalidateElection(id, "again");
      v.require(false, where + "second invalidation succeeded");
    } catch (const service::ServiceError &e) {
      v.require(e.code() == service::ErrorCode::NotFound, where + "second invalidation: " + e.what());
    }
  }
  if (v.ok) v.detail = "both modes: election purged, 3 notices for 3 voters, second attempt NotFound";
  return v;
}

Verdict determinism() {
  Verdict v;
  oracle::Rng rng(kSeed + 1);
  std::size_t compared = 0;
  for (std::size_t i = 0; i < 2000 && v.ok; ++i) {
    auto file = testing::randomCorpusFile(rng);
    std::string first;
    try {
      first = io::serializeResult(io::tallyElection(file.definition, file.ballots), true);
    } catch (const tally::PreconditionError &) {
      continue;
    }
    auto def = io::parseElection(file.definitionText);
    auto ballots = io::parseBallots(file.ballotText, def).ballots;
    v.require(io::serializeResult(io::tallyElection(def, ballots), true) == first,
              "file " + std::to_string(i) + " serialized differently");
    ++compared;
  }
  if (v.ok) v.detail = std::to_string(compared) + " elections, byte-identical on re-tally";
  return v;
}

}  // namespace

int main() {
  const auto bounds = randomBounds();
  const auto core = oracle::coreSubjects();

  criterion("irv-exhaustive", irvExhaustive);
  criterion("irv-postconditions", [&] { return fromSuites({oracle::checkIrvRandom(bounds, kSeed, core)}); });
  criterion("stv-contract", [&] { return fromSuites({oracle::checkStvContract(bounds, kSeed, core)}); });
  criterion("stv-worked-example", stvWorkedExample);
  criterion("stv-factor-discipline", [&] { return fromSuites({oracle::checkStvFactors(bounds, kSeed, core)}); });
  criterion("borda", [&] { return fromSuites({oracle::checkBorda(bounds, kSeed, core)}); });
  criterion("score", [&] { return fromSuites({oracle::checkScore(bounds, kSeed, core)}); });
  criterion("ballot-io", ballotIo);
  criterion("service-end-to-end", serviceEndToEnd);
  criterion("invalidation-flow", invalidationFlow);
  criterion("determinism", determinism);

  std::printf("%s\n", failures == 0 ? "ALL PASS" : "FAILURES PRESENT");
  return failures == 0 ? 0 : 1;
}
