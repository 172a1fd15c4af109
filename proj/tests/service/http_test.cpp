#include "doctest.h"
#include "evote/io/result.hpp"
#include "json.hpp"
#include "support/request_corpus.hpp"
#include "support/test_server.hpp"

using namespace evote;
using Json = nlohmann::json;
using evote::testing::TestServer;

namespace {

Json post(httplib::Client &c, const std::string &path, const Json &body, int expected) {
  auto res = c.Post(path, body.dump(), "application/json");
  REQUIRE(res);
  CHECK_MESSAGE(res->status == expected, res->body);
  return Json::parse(res->body);
}

Json get(httplib::Client &c, const std::string &path, int expected) {
  auto res = c.Get(path);
  REQUIRE(res);
  CHECK_MESSAGE(res->status == expected, res->body);
  return Json::parse(res->body);
}

const Json kRunoff = {{"method", "irv"}, {"candidates", {"Alice", "Bob", "Carol"}}};

}  // namespace

TEST_CASE("HTTP: election lifecycle") {
  TestServer server(service::EnforcementMode::Precheck);
  auto c = server.client();

  auto created = post(c, "/elections", kRunoff, 201);
  const std::string id = created["id"];
  CHECK(created["status"] == "open");
  CHECK(created["definition"]["candidates"][1] == Json{{"id", 2}, {"name", "Bob"}});
  const std::string base = "/elections/" + id;

  std::vector<std::string> tokens;
  for (int i = 0; i < 6; ++i) {
    auto v = post(c, base + "/voters", {{"contact", "v" + std::to_string(i) + "@example.org"}}, 201);
    CHECK(v["electionId"] == id);
    tokens.push_back(v["token"]);
  }
  const std::vector<Json> rankings = {{1, 2}, {1, 3}, {2, 1}, {3, 2}, {3, 2}};
  for (std::size_t i = 0; i < rankings.size(); ++i) {
    auto r = post(c, base + "/ballots", {{"token", tokens[i]}, {"ranking", rankings[i]}}, 201);
    CHECK(r["receipt"].get<std::string>().size() == 64);
  }
  CHECK(get(c, base + "/result", 409)["error"] == "NotTallied");
  auto summary = get(c, base, 200);
  CHECK(summary["voters"] == 6);
  CHECK(summary["ballots"] == 5);

  auto result = post(c, base + "/close", Json::object(), 200);
  CHECK(result["method"] == "irv");
  CHECK(result["winner"] == 1);
  CHECK(get(c, base + "/result", 200) == result);
  CHECK(get(c, base, 200)["status"] == "tallied");
  CHECK(post(c, base + "/close", Json::object(), 409)["error"] == "AlreadyTallied");
  CHECK(post(c, base + "/ballots", {{"token", tokens[5]}, {"ranking", {1}}}, 409)["error"] == "ElectionClosed");
  CHECK(post(c, base + "/voters", {{"contact", "late@example.org"}}, 409)["error"] == "ElectionClosed");

  auto direct = io::resultToJson(io::toDocument(
      io::tallyElection(server.service().getElection(id).definition, server.service().exportBallots(id)), true));
  CHECK(Json::parse(direct.dump()) == result);
}

TEST_CASE("HTTP: error statuses") {
  TestServer server(service::EnforcementMode::Halt);
  auto c = server.client();

  auto bad = post(c, "/elections", {{"method", "stv"}, {"seats", 5}, {"candidates", {"A"}}}, 400);
  CHECK(bad["error"] == "InvalidDefinition");
  CHECK(bad["kind"] == "InvalidParameter");
  CHECK(post(c, "/elections", {{"method", "irv"}, {"candidates", {"A", "A"}}}, 400)["kind"] == "DuplicateCandidate");
  {
    auto res = c.Post("/elections", "{", "application/json");
    REQUIRE(res);
    CHECK(res->status == 400);
    CHECK(Json::parse(res->body)["error"] == "InvalidRequest");
  }

  CHECK(get(c, "/elections/nope", 404)["error"] == "NotFound");
  CHECK(get(c, "/elections/nope/result", 404)["error"] == "NotFound");
  CHECK(post(c, "/elections/nope/close", Json::object(), 404)["error"] == "NotFound");
  CHECK(post(c, "/elections/nope/voters", {{"contact", "a"}}, 404)["error"] == "NotFound");

  const std::string id = post(c, "/elections", kRunoff, 201)["id"];
  const std::string base = "/elections/" + id;
  CHECK(post(c, base + "/voters", {{"contact", 3}}, 400)["error"] == "InvalidRequest");
  const std::string token = post(c, base + "/voters", {{"contact", "a@example.org"}}, 201)["token"];

  CHECK(post(c, base + "/ballots", {{"ranking", {1}}}, 400)["error"] == "InvalidRequest");
  CHECK(post(c, base + "/ballots", {{"token", "forged"}, {"ranking", {1}}}, 400)["error"] == "InvalidToken");
  auto dup = post(c, base + "/ballots", {{"token", token}, {"ranking", {2, 2}}}, 400);
  CHECK(dup["error"] == "InvalidBallot");
  CHECK(dup["kind"] == "DuplicateInBallot");
  CHECK(post(c, base + "/ballots", {{"token", token}, {"ranking", {9}}}, 400)["kind"] == "UnknownCandidate");
  CHECK(post(c, base + "/ballots", {{"token", token}, {"ranking", {"1"}}}, 400)["kind"] == "SyntaxError");
  CHECK(post(c, base + "/ballots", {{"token", token}, {"scores", {{"1", 1}}}}, 400)["kind"] == "SyntaxError");
  CHECK(post(c, base + "/ballots", {{"token", token}, {"ranking", {1}}, {"extra", 1}}, 400)["kind"] ==
        "SyntaxError");
  post(c, base + "/ballots", {{"token", token}, {"ranking", {1}}}, 201);
  CHECK(post(c, base + "/ballots", {{"token", token}, {"ranking", {1}}}, 409)["error"] == "TokenUsed");
}

TEST_CASE("HTTP: invalidated elections answer 404 with the reason") {
  TestServer server(service::EnforcementMode::Precheck);
  auto c = server.client();
  const std::string id = post(c, "/elections", kRunoff, 201)["id"];
  post(c, "/elections/" + id + "/voters", {{"contact", "a@example.org"}}, 201);
  server.service().invalidateElection(id, "audit failed");

  auto body = get(c, "/elections/" + id, 404);
  CHECK(body["error"] == "NotFound");
  CHECK(body["reason"] == "audit failed");
  CHECK(body["invalidatedAt"] == "2024-01-01T00:00:00Z");
  CHECK(get(c, "/elections/" + id + "/result", 404)["reason"] == "audit failed");
}

TEST_CASE("HTTP: CORS") {
  TestServer plain(service::EnforcementMode::Precheck);
  auto pc = plain.client();
  auto res = pc.Get("/elections/x");
  REQUIRE(res);
  CHECK_FALSE(res->has_header("Access-Control-Allow-Origin"));

  TestServer server(service::EnforcementMode::Precheck, service::ApiOptions{"http://localhost:5173"});
  auto c = server.client();
  res = c.Get("/elections/x");
  REQUIRE(res);
  CHECK(res->get_header_value("Access-Control-Allow-Origin") == "http://localhost:5173");
  res = c.Options("/elections");
  REQUIRE(res);
  CHECK(res->status == 204);
  CHECK(res->get_header_value("Access-Control-Allow-Methods").find("POST") != std::string::npos);
}

TEST_CASE("HTTP: both enforcement modes answer a mixed corpus identically") {
  const auto script = evote::testing::requestCorpus(7, 500);
  REQUIRE(script.size() == 500);
  TestServer precheck(service::EnforcementMode::Precheck);
  TestServer halt(service::EnforcementMode::Halt);
  auto pc = precheck.client();
  auto hc = halt.client();
  auto a = evote::testing::runCorpus(pc, script);
  auto b = evote::testing::runCorpus(hc, script);
  REQUIRE(a.size() == b.size());

  std::map<int, int> statuses;
  std::size_t tallies = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CAPTURE(i);
    CHECK(a[i].status == b[i].status);
    CHECK(a[i].outcome == b[i].outcome);
    ++statuses[a[i].status];
    if (a[i].status == 200 && a[i].outcome.find("\"method\"") != std::string::npos) ++tallies;
  }
  // The corpus exercises every class of reply.
  for (int s : {200, 201, 400, 404, 409}) CHECK_MESSAGE(statuses[s] > 0, s);
  CHECK(statuses[500] == 0);
  CHECK(tallies >= 6);
}
