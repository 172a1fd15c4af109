#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "evote/io/ballots.hpp"
#include "evote/io/definition.hpp"
#include "evote/io/result.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Run runCli(const std::string &args) {
  static int counter = 0;
  fs::path errFile = fs::temp_directory_path() / ("evote_cli_err_" + std::to_string(::getpid()) + "_" +
                                                  std::to_string(counter++));
  std::string cmd = std::string(EVOTE_CLI) + " " + args + " 2>" + errFile.string();
  Run run{};
  FILE *pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) run.out.append(buf.data(), n);
  int raw = ::pclose(pipe);
  run.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  run.err = slurp(errFile);
  fs::remove(errFile);
  return run;
}

std::string sample(const std::string &name) { return std::string(EVOTE_SAMPLES) + "/" + name; }

}  // namespace

TEST_CASE("tally the worked stv example") {
  auto run = runCli("tally " + sample("worked-stv.election") + " " + sample("worked-stv.ballots"));
  CHECK(run.status == 0);
  auto doc = evote::io::parseResult(run.out);
  CHECK(doc.elected == std::vector{evote::tally::CandidateId(1)});
  CHECK(doc.autofilled == std::vector{evote::tally::CandidateId(3)});
  CHECK(doc.quota == evote::Rational(2));
  CHECK_FALSE(doc.rounds.has_value());
}

TEST_CASE("tally output is the library result, byte for byte") {
  for (std::string name : {"worked-stv", "runoff", "borda", "score"}) {
    auto def = evote::io::parseElection(slurp(sample(name + ".election")));
    auto ballots = evote::io::parseBallots(slurp(sample(name + ".ballots")), def).ballots;
    auto expected = evote::io::serializeResult(evote::io::tallyElection(def, ballots), true);
    auto run = runCli("tally --trace " + sample(name + ".election") + " " + sample(name + ".ballots"));
    CHECK(run.status == 0);
    CHECK(run.out == expected);
    CHECK(runCli("tally --trace " + sample(name + ".election") + " " + sample(name + ".ballots")).out == run.out);
  }
}

TEST_CASE("strict tally rejects a duplicate ranking") {
  auto run = runCli("tally --strict " + sample("runoff.election") + " " + sample("runoff-duplicate.ballots"));
  CHECK(run.status == 2);
  CHECK(run.out.empty());
  CHECK(run.err.find("runoff-duplicate.ballots:3:3: DuplicateInBallot") != std::string::npos);

  auto lenient = runCli("tally --lenient " + sample("runoff.election") + " " + sample("runoff-duplicate.ballots"));
  CHECK(lenient.status == 0);
  CHECK(lenient.err.find("DuplicateInBallot") != std::string::npos);
  CHECK(evote::io::parseResult(lenient.out).winner == evote::tally::CandidateId(1));

  CHECK(runCli("tally --strict --lenient " + sample("runoff.election") + " " + sample("runoff.ballots")).status == 2);
}

TEST_CASE("an empty ballot file has no winner") {
  auto run = runCli("tally " + sample("runoff.election") + " " + sample("runoff-empty.ballots"));
  CHECK(run.status == 0);
  CHECK(run.out.find("\"winner\": null") != std::string::npos);
}

TEST_CASE("validate") {
  CHECK(runCli("validate " + sample("score.election") + " " + sample("score.ballots")).status == 0);
  CHECK(runCli("validate " + sample("runoff.election") + " " + sample("runoff-duplicate.ballots")).status == 2);
  CHECK(runCli("validate " + sample("runoff.election") + " " + sample("worked-stv.ballots")).status == 2);
  CHECK(runCli("validate " + sample("missing.election")).status == 1);
}

TEST_CASE("quota") {
  CHECK(runCli("quota 100 4").out == "21\n");
  CHECK(runCli("quota 5 2").out == "2\n");
  CHECK(runCli("quota 0 0").out == "1\n");
  CHECK(runCli("quota 5 x").status == 2);
  CHECK(runCli("quota 2.5 1").status == 2);
  CHECK(runCli("quota -1 1").status == 2);
}

TEST_CASE("check") {
  auto run = runCli("check --seed 11 --bounds instances=500");
  CHECK(run.status == 0);
  CHECK(run.out.find("FAIL") == std::string::npos);
  CHECK(runCli("check --seed 11 --bounds instances=500").out == run.out);

  CHECK(runCli("check --bounds candidates=1,instances=200").status == 0);

  auto mutant = runCli("check --mutant irv-single-elimination --bounds instances=200");
  CHECK(mutant.status == 2);
  CHECK(mutant.out.find("FAIL irv-exhaustive") != std::string::npos);
  CHECK(mutant.out.find("counterexample: ") != std::string::npos);

  CHECK(runCli("check --bounds colours=3").status == 2);
}

TEST_CASE("usage errors") {
  CHECK(runCli("").status == 2);
  CHECK(runCli("frobnicate").status == 2);
  CHECK(runCli("tally").status == 2);
  CHECK(runCli("--help").status == 0);
}
