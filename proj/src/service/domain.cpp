#include "evote/service/domain.hpp"

#include <charconv>

namespace evote::service {

std::string_view name(Status status) {
  switch (status) {
    case Status::Open: return "open";
    case Status::Closed: return "closed";
    case Status::Tallied: return "tallied";
    case Status::Invalidated: return "invalidated";
  }
  return "?";
}

std::string_view name(EnforcementMode mode) { return mode == EnforcementMode::Precheck ? "precheck" : "halt"; }

std::optional<EnforcementMode> parseEnforcementMode(std::string_view text) {
  if (text == "precheck") return EnforcementMode::Precheck;
  if (text == "halt") return EnforcementMode::Halt;
  return std::nullopt;
}

std::string_view name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::InvalidDefinition: return "InvalidDefinition";
    case ErrorCode::ElectionClosed: return "ElectionClosed";
    case ErrorCode::InvalidToken: return "InvalidToken";
    case ErrorCode::TokenUsed: return "TokenUsed";
    case ErrorCode::InvalidBallot: return "InvalidBallot";
    case ErrorCode::InvalidRequest: return "InvalidRequest";
    case ErrorCode::NotTallied: return "NotTallied";
    case ErrorCode::AlreadyTallied: return "AlreadyTallied";
    case ErrorCode::ValidationFailure: return "ValidationFailure";
  }
  return "?";
}

ServiceError::ServiceError(ErrorCode code, std::string message, std::optional<io::ErrorKind> kind,
                           std::optional<Tombstone> tombstone)
    : std::runtime_error(std::move(message)), code_(code), kind_(kind), tombstone_(std::move(tombstone)) {}

namespace {

[[noreturn]] void badPayload(const std::string &message) {
  throw ServiceError(ErrorCode::InvalidBallot, message, io::ErrorKind::SyntaxError);
}

tally::CandidateId candidateFrom(const nlohmann::json &v) {
  // Ids outside uint32 can never name a candidate; they are unknown, not malformed.
  if (v.is_number_unsigned()) {
    auto raw = v.get<std::uint64_t>();
    return tally::CandidateId(raw > UINT32_MAX ? 0U : static_cast<std::uint32_t>(raw));
  }
  if (v.is_number_integer()) return tally::CandidateId(0);
  badPayload("candidate ids must be integers");
}

}  // namespace

BallotPayload payloadFromJson(const nlohmann::json &json) {
  if (!json.is_object()) badPayload("a ballot is an object");
  const bool ranked = json.contains("ranking");
  const bool scored = json.contains("scores");
  if (ranked == scored || json.size() != 1) badPayload("a ballot has exactly one of 'ranking' or 'scores'");
  if (ranked) {
    const auto &list = json["ranking"];
    if (!list.is_array()) badPayload("'ranking' must be an array");
    tally::PreferenceBallot ballot;
    for (const auto &e : list) ballot.push_back(candidateFrom(e));
    return ballot;
  }
  const auto &map = json["scores"];
  if (!map.is_object()) badPayload("'scores' must be an object");
  tally::ScoreBallot ballot;
  for (const auto &[key, value] : map.items()) {
    std::uint32_t id = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), id);
    if (key.empty() || ptr != key.data() + key.size()) {
      if (ec == std::errc::result_out_of_range) {
        id = 0;
      } else {
        badPayload("score keys must be candidate ids");
      }
    }
    if (!value.is_number_integer()) badPayload("scores must be integers");
    // Distinct JSON keys such as "1" and "01" name the same candidate.
    std::int64_t score = value.is_number_unsigned() && value.get<std::uint64_t>() > INT64_MAX
                             ? INT64_MAX
                             : value.get<std::int64_t>();
    if (!ballot.emplace(tally::CandidateId(id), score).second) {
      throw ServiceError(ErrorCode::InvalidBallot, "candidate " + std::to_string(id) + " scored twice",
                         io::ErrorKind::DuplicateInBallot);
    }
  }
  return ballot;
}

nlohmann::ordered_json payloadToJson(const BallotPayload &payload) {
  nlohmann::ordered_json out;
  if (const auto *ranking = std::get_if<tally::PreferenceBallot>(&payload)) {
    out["ranking"] = nlohmann::ordered_json::array();
    for (auto c : *ranking) out["ranking"].push_back(c.value);
  } else {
    out["scores"] = nlohmann::ordered_json::object();
    for (const auto &[c, s] : std::get<tally::ScoreBallot>(payload)) out["scores"][std::to_string(c.value)] = s;
  }
  return out;
}

}  // namespace evote::service
