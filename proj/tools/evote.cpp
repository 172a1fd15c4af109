// evote: tally ballot files, validate inputs, run the differential checks.
// Exit status: 0 success, 2 invalid input or failed checks, 1 anything else.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "evote/io/ballots.hpp"
#include "evote/io/definition.hpp"
#include "evote/io/result.hpp"
#include "evote/oracle/check.hpp"
#include "evote/tally/errors.hpp"
#include "evote/tally/stv.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kInvalid = 2;

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string readFile(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void report(const std::string &path, const std::vector<evote::io::Diagnostic> &diagnostics) {
  for (const auto &d : diagnostics) std::cerr << path << ":" << d.toString() << "\n";
}

evote::io::ElectionDefinition loadDefinition(const std::string &path) {
  try {
    return evote::io::parseElection(readFile(path));
  } catch (const evote::io::ParseError &e) {
    report(path, e.diagnostics());
    throw;
  }
}

evote::io::ParsedBallots loadBallots(const std::string &path, const evote::io::ElectionDefinition &definition,
                                     evote::io::ParseMode mode) {
  try {
    auto parsed = evote::io::parseBallots(readFile(path), definition, mode);
    if (!parsed.diagnostics.empty()) {
      report(path, parsed.diagnostics);
      std::cerr << "skipped " << parsed.diagnostics.size() << " invalid record(s)\n";
    }
    return parsed;
  } catch (const evote::io::ParseError &e) {
    report(path, e.diagnostics());
    throw;
  }
}

struct TallyArgs {
  std::string definition;
  std::string ballots;
  bool lenient{false};
  bool trace{false};
};

int runTally(const TallyArgs &args) {
  auto definition = loadDefinition(args.definition);
  auto parsed =
      loadBallots(args.ballots, definition, args.lenient ? evote::io::ParseMode::Lenient : evote::io::ParseMode::Strict);
  auto outcome = evote::io::tallyElection(definition, parsed.ballots);
  std::cout << evote::io::serializeResult(outcome, args.trace);
  return kOk;
}

struct ValidateArgs {
  std::string definition;
  std::string ballots;
};

int runValidate(const ValidateArgs &args) {
  auto definition = loadDefinition(args.definition);
  std::cout << args.definition << ": ok, " << name(definition.method) << ", " << definition.candidates.size()
            << " candidate(s)\n";
  if (!args.ballots.empty()) {
    auto parsed = loadBallots(args.ballots, definition, evote::io::ParseMode::Strict);
    std::cout << args.ballots << ": ok, " << parsed.ballots.size() << " ballot(s)\n";
  }
  return kOk;
}

struct CheckArgs {
  std::string bounds;
  std::uint64_t seed{1};
  std::string mutant;
};

int runCheck(const CheckArgs &args) {
  evote::oracle::CheckBounds bounds;
  evote::oracle::Subjects subjects;
  try {
    bounds = evote::oracle::parseBounds(args.bounds);
    subjects = args.mutant.empty() ? evote::oracle::coreSubjects() : evote::oracle::mutantSubjects(args.mutant);
  } catch (const std::invalid_argument &e) {
    std::cerr << "check: " << e.what() << "\n";
    return kInvalid;
  }
  auto report = evote::oracle::runChecks(bounds, args.seed, subjects);
  for (const auto &suite : report.suites) {
    std::cout << (suite.passed() ? "PASS " : "FAIL ") << suite.name << ": " << suite.instances << " instances, "
              << suite.violations << " violations\n";
    if (!suite.passed()) std::cout << "  counterexample: " << suite.counterexample << "\n";
  }
  return report.passed() ? kOk : kInvalid;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Election tallying with exact arithmetic"};
  app.require_subcommand(1);

  TallyArgs tallyArgs;
  auto *tally = app.add_subcommand("tally", "Tally a ballot file and print the result as JSON");
  tally->add_option("definition", tallyArgs.definition, "Election definition file")->required();
  tally->add_option("ballots", tallyArgs.ballots, "Ballot file")->required();
  auto *strict = tally->add_flag("--strict", "Reject the file if any record is invalid (default)");
  tally->add_flag("--lenient", tallyArgs.lenient, "Skip invalid records and report them")->excludes(strict);
  tally->add_flag("--trace", tallyArgs.trace, "Include the round-by-round trace");

  ValidateArgs validateArgs;
  auto *validate = app.add_subcommand("validate", "Check a definition and optionally a ballot file");
  validate->add_option("definition", validateArgs.definition, "Election definition file")->required();
  validate->add_option("ballots", validateArgs.ballots, "Ballot file");

  CheckArgs checkArgs;
  auto *check = app.add_subcommand("check", "Compare the tally algorithms against the reference models");
  check->add_option("--bounds", checkArgs.bounds,
                    "Comma-separated key=value: candidates, ballots, stv-ballots, exhaustive-candidates, "
                    "exhaustive-ballots, instances");
  check->add_option("--seed", checkArgs.seed, "Seed for the randomized suites")->capture_default_str();
  check->add_option("--mutant", checkArgs.mutant)->group("");

  std::uint64_t quotaBallots = 0;
  std::uint64_t quotaSeats = 0;
  auto *quota = app.add_subcommand("quota", "Print the Droop quota for a ballot count and seat count");
  quota->add_option("ballots", quotaBallots, "Number of ballots")->required();
  quota->add_option("seats", quotaSeats, "Number of seats")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*tally) return runTally(tallyArgs);
    if (*validate) return runValidate(validateArgs);
    if (*check) return runCheck(checkArgs);
    if (*quota) {
      std::cout << evote::tally::droopQuota(quotaBallots, quotaSeats).numerator() << "\n";
      return kOk;
    }
  } catch (const evote::io::ParseError &) {
    return kInvalid;  // diagnostics already printed
  } catch (const evote::tally::PreconditionError &e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kInvalid;
  } catch (const IoFailure &e) {
    std::cerr << e.what() << "\n";
    return kInternal;
  } catch (const std::exception &e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
