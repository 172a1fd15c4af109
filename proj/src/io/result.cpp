#include "evote/io/result.hpp"

#include "evote/tally/borda.hpp"
#include "evote/tally/irv.hpp"
#include "evote/tally/score.hpp"
#include "evote/tally/stv.hpp"
#include "text.hpp"

namespace evote::io {

using tally::CandidateId;
using Json = nlohmann::ordered_json;

tally::TallyOutcome tallyElection(const ElectionDefinition &definition, const BallotFile &ballots) {
  switch (definition.method) {
    case Method::Score: return tally::tallyScore(ballots.scores, definition.rosterSet(), definition.range());
    case Method::Irv: return tally::instantRunoff(definition.rosterSet(), ballots.rankings);
    case Method::Borda:
      return tally::tallyBorda(definition.roster(), ballots.rankings, definition.maxTiedPlacements.value_or(0));
    case Method::Stv:
      return tally::singleTransferableVote(ballots.rankings, definition.roster(), definition.seats.value_or(0));
  }
  throw std::logic_error("unreachable method");
}

Method methodOf(const tally::TallyOutcome &outcome) {
  static constexpr Method byIndex[] = {Method::Score, Method::Irv, Method::Borda, Method::Stv};
  return byIndex[outcome.index()];
}

ResultDocument toDocument(const tally::TallyOutcome &outcome, bool includeTrace) {
  ResultDocument doc;
  doc.method = methodOf(outcome);
  auto winnerOf = [](CandidateId c) { return c.isNoWinner() ? std::nullopt : std::optional<CandidateId>(c); };

  if (const auto *score = std::get_if<tally::ScoreResult>(&outcome)) {
    doc.winners.assign(score->winners.begin(), score->winners.end());
    doc.totals = score->totals;
    if (includeTrace) doc.rounds.emplace();
  } else if (const auto *irv = std::get_if<tally::IrvResult>(&outcome)) {
    doc.winner = winnerOf(irv->winner);
    if (includeTrace) doc.rounds = irv->trace;
  } else if (const auto *borda = std::get_if<tally::BordaResult>(&outcome)) {
    doc.winner = winnerOf(borda->winner);
    for (const auto &[c, points] : borda->standings) doc.totals[c] = static_cast<std::int64_t>(points);
    if (includeTrace) doc.rounds = borda->trace;
  } else if (const auto *stv = std::get_if<tally::StvResult>(&outcome)) {
    doc.seats = stv->seats;
    doc.quota = stv->quota;
    doc.elected = stv->elected;
    doc.autofilled = stv->autofilled;
    for (std::size_t i = 0; i < stv->witnesses.size(); ++i) {
      const auto &w = stv->witnesses[i];
      WitnessSummary summary{stv->elected[i], {}};
      for (CandidateId c : w.roster) summary.tallies[c] = tally::calculateTotalValue(w.ballots, w.roster, w.factors, c);
      doc.witnesses.push_back(std::move(summary));
    }
    if (includeTrace) doc.rounds = stv->trace;
  }
  return doc;
}

namespace {

Json idList(const std::vector<CandidateId> &ids) {
  Json out = Json::array();
  for (CandidateId c : ids) out.push_back(c.value);
  return out;
}

Json rationalMap(const std::map<CandidateId, Rational> &values) {
  Json out = Json::object();
  for (const auto &[c, v] : values) out[std::to_string(c.value)] = v.toString();
  return out;
}

[[noreturn]] void malformed(const std::string &what) { throw ParseError({{ErrorKind::SyntaxError, 0, 0, what}}); }

const nlohmann::json &field(const nlohmann::json &obj, const char *key) {
  if (!obj.is_object() || !obj.contains(key)) malformed(std::string("missing field '") + key + "'");
  return obj[key];
}

CandidateId idFrom(const nlohmann::json &v) {
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0 || v.get<std::uint64_t>() > UINT32_MAX) {
    malformed("candidate ids are positive integers");
  }
  return CandidateId(v.get<std::uint32_t>());
}

CandidateId idFromKey(const std::string &key) {
  auto id = detail::parseInt<std::uint32_t>(key);
  if (!id || *id == 0) malformed("candidate keys are positive integers, got '" + key + "'");
  return CandidateId(*id);
}

std::vector<CandidateId> idsFrom(const nlohmann::json &v) {
  if (!v.is_array()) malformed("expected an array of candidate ids");
  std::vector<CandidateId> out;
  for (const auto &e : v) out.push_back(idFrom(e));
  return out;
}

Rational rationalFrom(const nlohmann::json &v) {
  if (!v.is_string()) malformed("rationals are \"p/q\" strings");
  try {
    return Rational::parse(v.get<std::string>());
  } catch (const std::exception &) {
    malformed("bad rational '" + v.get<std::string>() + "'");
  }
}

std::map<CandidateId, Rational> rationalMapFrom(const nlohmann::json &v) {
  if (!v.is_object()) malformed("expected an object of tallies");
  std::map<CandidateId, Rational> out;
  for (const auto &[k, e] : v.items()) out[idFromKey(k)] = rationalFrom(e);
  return out;
}

tally::RoundAction actionFrom(const nlohmann::json &v) {
  using tally::RoundAction;
  for (RoundAction a : {RoundAction::Elect, RoundAction::Eliminate, RoundAction::Autofill, RoundAction::MajorityWin,
                        RoundAction::NoWinner}) {
    if (v.is_string() && v.get<std::string>() == tally::name(a)) return a;
  }
  malformed("unknown round action");
}

}  // namespace

Json resultToJson(const ResultDocument &doc) {
  Json out;
  out["method"] = name(doc.method);
  switch (doc.method) {
    case Method::Score: {
      out["winners"] = idList(doc.winners);
      Json totals = Json::object();
      for (const auto &[c, t] : doc.totals) totals[std::to_string(c.value)] = t;
      out["totals"] = totals;
      break;
    }
    case Method::Irv:
    case Method::Borda:
      out["winner"] = doc.winner ? Json(doc.winner->value) : Json(nullptr);
      if (doc.method == Method::Borda) {
        Json standings = Json::object();
        for (const auto &[c, t] : doc.totals) standings[std::to_string(c.value)] = t;
        out["standings"] = standings;
      }
      break;
    case Method::Stv: {
      out["seats"] = doc.seats;
      out["quota"] = doc.quota.toString();
      out["elected"] = idList(doc.elected);
      out["autofilled"] = idList(doc.autofilled);
      Json witnesses = Json::array();
      for (const auto &w : doc.witnesses) {
        witnesses.push_back({{"candidate", w.candidate.value}, {"tallies", rationalMap(w.tallies)}});
      }
      out["witnesses"] = witnesses;
      break;
    }
  }
  if (doc.rounds) {
    Json rounds = Json::array();
    for (const auto &r : *doc.rounds) {
      rounds.push_back({{"action", tally::name(r.action)}, {"affected", idList(r.affected)},
                        {"tallies", rationalMap(r.tallies)}});
    }
    out["rounds"] = rounds;
  }
  return out;
}

ResultDocument resultFromJson(const nlohmann::json &json) {
  ResultDocument doc;
  const auto &methodField = field(json, "method");
  auto method = methodField.is_string() ? parseMethod(methodField.get<std::string>()) : std::nullopt;
  if (!method) malformed("unknown method");
  doc.method = *method;

  auto integerMap = [](const nlohmann::json &v) {
    if (!v.is_object()) malformed("expected an object of integer totals");
    std::map<CandidateId, std::int64_t> out;
    for (const auto &[k, e] : v.items()) {
      if (!e.is_number_integer()) malformed("totals are integers");
      out[idFromKey(k)] = e.get<std::int64_t>();
    }
    return out;
  };

  switch (doc.method) {
    case Method::Score:
      doc.winners = idsFrom(field(json, "winners"));
      doc.totals = integerMap(field(json, "totals"));
      break;
    case Method::Irv:
    case Method::Borda: {
      const auto &w = field(json, "winner");
      if (!w.is_null()) doc.winner = idFrom(w);
      if (doc.method == Method::Borda) doc.totals = integerMap(field(json, "standings"));
      break;
    }
    case Method::Stv: {
      const auto &seats = field(json, "seats");
      if (!seats.is_number_unsigned()) malformed("seats is a non-negative integer");
      doc.seats = seats.get<std::size_t>();
      doc.quota = rationalFrom(field(json, "quota"));
      doc.elected = idsFrom(field(json, "elected"));
      doc.autofilled = idsFrom(field(json, "autofilled"));
      const auto &witnesses = field(json, "witnesses");
      if (!witnesses.is_array()) malformed("witnesses is an array");
      for (const auto &w : witnesses) {
        doc.witnesses.push_back({idFrom(field(w, "candidate")), rationalMapFrom(field(w, "tallies"))});
      }
      break;
    }
  }

  if (json.contains("rounds")) {
    const auto &rounds = json["rounds"];
    if (!rounds.is_array()) malformed("rounds is an array");
    doc.rounds.emplace();
    for (const auto &r : rounds) {
      doc.rounds->push_back(
          {rationalMapFrom(field(r, "tallies")), actionFrom(field(r, "action")), idsFrom(field(r, "affected"))});
    }
  }
  return doc;
}

std::string serializeResult(const ResultDocument &document) { return resultToJson(document).dump(2) + "\n"; }

std::string serializeResult(const tally::TallyOutcome &outcome, bool includeTrace) {
  return serializeResult(toDocument(outcome, includeTrace));
}

ResultDocument parseResult(std::string_view text) {
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    malformed(e.what());
  }
  return resultFromJson(json);
}

}  // namespace evote::io
