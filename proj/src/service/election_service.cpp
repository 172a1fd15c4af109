#include "evote/service/election_service.hpp"

#include <chrono>
#include <ctime>

#include "evote/service/crypto.hpp"
#include "evote/tally/errors.hpp"

namespace evote::service {

std::string utcNow() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

namespace {

std::string hashToken(const std::string &token) { return sha256Hex(token); }

/// The ballot in the shape the definition's method takes, or nullopt.
std::optional<io::BallotFile> asBallotFile(const io::ElectionDefinition &definition,
                                           const std::vector<BallotPayload> &ballots) {
  io::BallotFile file;
  file.method = definition.method;
  for (const auto &b : ballots) {
    if (io::isRanked(definition.method)) {
      const auto *ranking = std::get_if<tally::PreferenceBallot>(&b);
      if (!ranking) return std::nullopt;
      file.rankings.push_back(*ranking);
    } else {
      const auto *scores = std::get_if<tally::ScoreBallot>(&b);
      if (!scores) return std::nullopt;
      file.scores.push_back(*scores);
    }
  }
  return file;
}

std::optional<io::BallotIssue> precheck(const io::ElectionDefinition &definition, const BallotPayload &ballot) {
  if (const auto *ranking = std::get_if<tally::PreferenceBallot>(&ballot)) {
    return io::checkRanking(*ranking, definition);
  }
  return io::checkScores(std::get<tally::ScoreBallot>(ballot), definition);
}

std::string shapeMessage(const io::ElectionDefinition &definition) {
  return std::string(name(definition.method)) + " ballots need " +
         (io::isRanked(definition.method) ? "a 'ranking'" : "'scores'");
}

}  // namespace

ElectionService::ElectionService(ServiceOptions options)
    : options_(std::move(options)),
      store_(options_.storeDirectory, options_.snapshotEvery),
      outbox_(options_.outboxDirectory) {
  if (!options_.clock) options_.clock = utcNow;
  if (options_.sender) outbox_.deliver(*options_.sender);
}

std::shared_ptr<std::mutex> ElectionService::lockFor(const ElectionId &id) {
  std::lock_guard guard(locksMutex_);
  auto &slot = locks_[id];
  if (!slot) slot = std::make_shared<std::mutex>();
  return slot;
}

void ElectionService::notFound(const ElectionId &id) const {
  if (auto tomb = store_.tombstone(id)) {
    throw ServiceError(ErrorCode::NotFound, "election " + id + " was invalidated: " + tomb->reason, std::nullopt,
                       tomb);
  }
  throw ServiceError(ErrorCode::NotFound, "no election " + id);
}

ElectionRecord ElectionService::load(const ElectionId &id) const {
  auto record = store_.find(id);
  if (!record) notFound(id);
  return std::move(*record);
}

ElectionSummary ElectionService::createElection(const io::ElectionDefinition &definition) {
  try {
    io::validateDefinition(definition);
  } catch (const io::ParseError &e) {
    throw ServiceError(ErrorCode::InvalidDefinition, e.diagnostics().front().message, e.kind());
  }
  ElectionId id;
  do {
    id = randomHex(16);
  } while (store_.exists(id));
  std::string createdAt = options_.clock();
  store_.append({ElectionCreated{id, createdAt, definition}});
  return {id, Status::Open, createdAt, definition, 0, 0};
}

std::string ElectionService::registerVoter(const ElectionId &id, const std::string &contact) {
  if (contact.empty()) throw ServiceError(ErrorCode::InvalidRequest, "a contact address is required");
  auto lock = lockFor(id);
  std::lock_guard guard(*lock);
  Status status{};
  if (!store_.read(id, [&](const ElectionRecord &r) { status = r.status; })) notFound(id);
  if (status != Status::Open) throw ServiceError(ErrorCode::ElectionClosed, "election " + id + " is not open");
  std::string token = randomHex(32);
  store_.append({VoterRegistered{id, {contact, hashToken(token)}}});
  return token;
}

void ElectionService::screenBallot(const io::ElectionDefinition &definition, const BallotPayload &ballot) const {
  if (!asBallotFile(definition, {ballot})) {
    throw ServiceError(ErrorCode::InvalidBallot, shapeMessage(definition), io::ErrorKind::SyntaxError);
  }
  if (options_.enforcement == EnforcementMode::Precheck) {
    if (auto issue = precheck(definition, ballot)) {
      throw ServiceError(ErrorCode::InvalidBallot, issue->message, issue->kind);
    }
    return;
  }
  // Halt: let the core judge the ballot on its own and trap its refusal.
  try {
    io::tallyElection(definition, *asBallotFile(definition, {ballot}));
  } catch (const tally::PreconditionError &e) {
    throw ServiceError(ErrorCode::InvalidBallot, e.what(), io::fromViolation(e.kind()));
  }
}

Receipt ElectionService::castBallot(const ElectionId &id, const std::string &token, const BallotPayload &ballot) {
  auto lock = lockFor(id);
  std::lock_guard guard(*lock);
  const std::string tokenHash = hashToken(token);
  Status status{};
  bool registered = false;
  bool used = false;
  io::ElectionDefinition definition;
  std::size_t index = 0;
  bool found = store_.read(id, [&](const ElectionRecord &r) {
    status = r.status;
    definition = r.definition;
    index = r.ballots.size();
    used = r.usedTokens.contains(tokenHash);
    for (const auto &v : r.voters) registered = registered || v.tokenHash == tokenHash;
  });
  if (!found) notFound(id);
  if (status != Status::Open) throw ServiceError(ErrorCode::ElectionClosed, "election " + id + " is not open");
  if (!registered) throw ServiceError(ErrorCode::InvalidToken, "unknown cast token");
  if (used) throw ServiceError(ErrorCode::TokenUsed, "this token has already been used");
  screenBallot(definition, ballot);

  store_.append({TokenConsumed{id, tokenHash}, BallotAccepted{id, index, ballot}});
  return {id, sha256Hex(id + "\n" + payloadToJson(ballot).dump())};
}

io::ResultDocument ElectionService::closeAndTally(const ElectionId &id) {
  auto lock = lockFor(id);
  std::lock_guard guard(*lock);
  ElectionRecord record = load(id);
  if (record.status == Status::Tallied) throw ServiceError(ErrorCode::AlreadyTallied, "election " + id + " is tallied");
  if (record.status == Status::Open) store_.append({ElectionClosed{id}});

  auto reject = [&](std::size_t index, io::ErrorKind kind) {
    std::string reason = "stored ballot " + std::to_string(index) + " violates " + std::string(io::name(kind));
    invalidateLocked(id, reason);
    throw ServiceError(ErrorCode::ValidationFailure, reason, kind);
  };

  auto file = asBallotFile(record.definition, record.ballots);
  if (!file) {
    for (std::size_t i = 0; i < record.ballots.size(); ++i) {
      if (!asBallotFile(record.definition, {record.ballots[i]})) reject(i, io::ErrorKind::SyntaxError);
    }
  }

  std::optional<tally::TallyOutcome> outcome;
  if (options_.enforcement == EnforcementMode::Precheck) {
    for (std::size_t i = 0; i < record.ballots.size(); ++i) {
      if (auto issue = precheck(record.definition, record.ballots[i])) reject(i, issue->kind);
    }
    outcome = io::tallyElection(record.definition, *file);
  } else {
    try {
      outcome = io::tallyElection(record.definition, *file);
    } catch (const tally::PreconditionError &e) {
      reject(e.ballotIndex().value_or(0), io::fromViolation(e.kind()));
    }
  }

  auto document = io::toDocument(*outcome, true);
  store_.append({ElectionTallied{id, document}});
  return document;
}

void ElectionService::invalidateElection(const ElectionId &id, const std::string &reason) {
  auto lock = lockFor(id);
  std::lock_guard guard(*lock);
  if (!store_.find(id)) notFound(id);
  invalidateLocked(id, reason);
}

void ElectionService::invalidateLocked(const ElectionId &id, const std::string &reason) {
  ElectionRecord record = load(id);
  const std::string now = options_.clock();
  std::vector<OutboxRecord> notices;
  for (const auto &voter : record.voters) notices.push_back({voter.contact, id, reason, now});
  // Notices first: if the purge fails the election is still there to retry.
  outbox_.append(notices);
  store_.purge(id, {id, reason, now});
  if (options_.sender) outbox_.deliver(*options_.sender);
}

ElectionSummary ElectionService::getElection(const ElectionId &id) const {
  ElectionSummary summary;
  bool found = store_.read(id, [&](const ElectionRecord &r) {
    summary = {r.id, r.status, r.createdAt, r.definition, r.voters.size(), r.ballots.size()};
  });
  if (!found) notFound(id);
  return summary;
}

io::ResultDocument ElectionService::getResult(const ElectionId &id) const {
  std::optional<io::ResultDocument> result;
  if (!store_.read(id, [&](const ElectionRecord &r) { result = r.result; })) notFound(id);
  if (!result) throw ServiceError(ErrorCode::NotTallied, "election " + id + " has not been tallied");
  return *result;
}

io::BallotFile ElectionService::exportBallots(const ElectionId &id) const {
  io::BallotFile file;
  bool shaped = true;
  bool found = store_.read(id, [&](const ElectionRecord &r) {
    auto converted = asBallotFile(r.definition, r.ballots);
    if (converted) {
      file = std::move(*converted);
    } else {
      shaped = false;
    }
  });
  if (!found) notFound(id);
  if (!shaped) throw ServiceError(ErrorCode::ValidationFailure, "stored ballots do not match the method");
  return file;
}

}  // namespace evote::service
