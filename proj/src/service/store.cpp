#include "evote/service/store.hpp"

#include <mutex>
#include <sstream>

namespace evote::service {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void corrupt(const std::string &what) { throw StoreError("store: " + what); }

const nlohmann::json &need(const nlohmann::json &obj, const char *key) {
  if (!obj.is_object() || !obj.contains(key)) corrupt(std::string("missing '") + key + "'");
  return obj[key];
}

std::string text(const nlohmann::json &obj, const char *key) {
  const auto &v = need(obj, key);
  if (!v.is_string()) corrupt(std::string("'") + key + "' is not a string");
  return v.get<std::string>();
}

std::uint64_t count(const nlohmann::json &obj, const char *key) {
  const auto &v = need(obj, key);
  if (!v.is_number_unsigned()) corrupt(std::string("'") + key + "' is not a count");
  return v.get<std::uint64_t>();
}

template <typename T>
T decode(const char *what, auto &&parse) {
  try {
    return parse();
  } catch (const io::ParseError &e) {
    corrupt(std::string(what) + ": " + e.what());
  } catch (const ServiceError &e) {
    corrupt(std::string(what) + ": " + e.what());
  }
}

io::ElectionDefinition definitionFrom(const nlohmann::json &j) {
  return decode<io::ElectionDefinition>("definition", [&] { return io::definitionFromJson(j); });
}

// Stored ballots are taken as written; semantic checks happen at tally time.
BallotPayload ballotFrom(const nlohmann::json &j) {
  return decode<BallotPayload>("ballot", [&] { return payloadFromJson(j); });
}

io::ResultDocument resultFrom(const nlohmann::json &j) {
  return decode<io::ResultDocument>("result", [&] { return io::resultFromJson(j); });
}

Json recordToJson(const ElectionRecord &r) {
  Json out;
  out["id"] = r.id;
  out["createdAt"] = r.createdAt;
  out["status"] = name(r.status);
  out["definition"] = io::definitionToJson(r.definition);
  out["voters"] = Json::array();
  for (const auto &v : r.voters) out["voters"].push_back({{"contact", v.contact}, {"tokenHash", v.tokenHash}});
  out["usedTokens"] = r.usedTokens;
  out["ballots"] = Json::array();
  for (const auto &b : r.ballots) out["ballots"].push_back(payloadToJson(b));
  out["result"] = r.result ? io::resultToJson(*r.result) : Json(nullptr);
  return out;
}

ElectionRecord recordFromJson(const nlohmann::json &j) {
  ElectionRecord r;
  r.id = text(j, "id");
  r.createdAt = text(j, "createdAt");
  std::string status = text(j, "status");
  if (status == "open") {
    r.status = Status::Open;
  } else if (status == "closed") {
    r.status = Status::Closed;
  } else if (status == "tallied") {
    r.status = Status::Tallied;
  } else {
    corrupt("bad status '" + status + "'");
  }
  r.definition = definitionFrom(need(j, "definition"));
  for (const auto &v : need(j, "voters")) r.voters.push_back({text(v, "contact"), text(v, "tokenHash")});
  for (const auto &t : need(j, "usedTokens")) {
    if (!t.is_string()) corrupt("bad token hash");
    r.usedTokens.insert(t.get<std::string>());
  }
  for (const auto &b : need(j, "ballots")) r.ballots.push_back(ballotFrom(b));
  if (const auto &res = need(j, "result"); !res.is_null()) r.result = resultFrom(res);
  return r;
}

}  // namespace

Json eventToJson(const Event &event, std::uint64_t sequence) {
  Json out;
  out["seq"] = sequence;
  std::visit(
      [&](const auto &e) {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, ElectionCreated>) {
          out["type"] = "election-created";
          out["election"] = e.id;
          out["createdAt"] = e.createdAt;
          out["definition"] = io::definitionToJson(e.definition);
        } else if constexpr (std::is_same_v<E, VoterRegistered>) {
          out["type"] = "voter-registered";
          out["election"] = e.id;
          out["contact"] = e.voter.contact;
          out["tokenHash"] = e.voter.tokenHash;
        } else if constexpr (std::is_same_v<E, TokenConsumed>) {
          out["type"] = "token-consumed";
          out["election"] = e.id;
          out["tokenHash"] = e.tokenHash;
        } else if constexpr (std::is_same_v<E, BallotAccepted>) {
          out["type"] = "ballot-accepted";
          out["election"] = e.id;
          out["index"] = e.index;
          out["ballot"] = payloadToJson(e.ballot);
        } else if constexpr (std::is_same_v<E, ElectionClosed>) {
          out["type"] = "election-closed";
          out["election"] = e.id;
        } else {
          out["type"] = "election-tallied";
          out["election"] = e.id;
          out["result"] = io::resultToJson(e.result);
        }
      },
      event);
  return out;
}

Event eventFromJson(const nlohmann::json &j) {
  std::string type = text(j, "type");
  ElectionId id = text(j, "election");
  if (type == "election-created") return ElectionCreated{id, text(j, "createdAt"), definitionFrom(need(j, "definition"))};
  if (type == "voter-registered") return VoterRegistered{id, {text(j, "contact"), text(j, "tokenHash")}};
  if (type == "token-consumed") return TokenConsumed{id, text(j, "tokenHash")};
  if (type == "ballot-accepted") return BallotAccepted{id, count(j, "index"), ballotFrom(need(j, "ballot"))};
  if (type == "election-closed") return ElectionClosed{id};
  if (type == "election-tallied") return ElectionTallied{id, resultFrom(need(j, "result"))};
  corrupt("unknown event type '" + type + "'");
}

EventStore::EventStore(fs::path directory, std::size_t snapshotEvery)
    : directory_(std::move(directory)), snapshotEvery_(snapshotEvery) {
  fs::create_directories(directory_);
  load();
  openLog(false);
}

void EventStore::openLog(bool truncate) {
  if (log_.is_open()) log_.close();
  log_.open(eventLogPath(), std::ios::binary | (truncate ? std::ios::trunc : std::ios::app));
  if (!log_) corrupt("cannot open " + eventLogPath().string());
}

void EventStore::load() {
  if (fs::exists(snapshotPath())) {
    std::ifstream in(snapshotPath(), std::ios::binary);
    nlohmann::json snap;
    try {
      snap = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
      corrupt(std::string("unreadable snapshot: ") + e.what());
    }
    sequence_ = count(snap, "sequence");
    for (const auto &r : need(snap, "elections")) {
      auto record = recordFromJson(r);
      elections_[record.id] = std::move(record);
    }
    for (const auto &t : need(snap, "tombstones")) {
      Tombstone tomb{text(t, "id"), text(t, "reason"), text(t, "invalidatedAt")};
      tombstones_[tomb.id] = tomb;
    }
  }

  std::ifstream in(eventLogPath(), std::ios::binary);
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (line.empty()) continue;
    const bool torn = in.eof();  // last line without a newline
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception &) {
      if (torn) break;  // an interrupted final append never happened
      corrupt("event log line " + std::to_string(lineNo) + " is not JSON");
    }
    std::uint64_t seq = count(j, "seq");
    if (seq <= sequence_) continue;  // already folded into the snapshot
    applyEvent(elections_, eventFromJson(j));
    sequence_ = seq;
    ++eventsSinceSnapshot_;
  }
}

void EventStore::applyEvent(std::map<ElectionId, ElectionRecord> &elections, const Event &event) const {
  std::visit(
      [&](const auto &e) {
        using E = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<E, ElectionCreated>) {
          if (elections.contains(e.id) || tombstones_.contains(e.id)) corrupt("election " + e.id + " created twice");
          ElectionRecord r;
          r.id = e.id;
          r.createdAt = e.createdAt;
          r.definition = e.definition;
          elections.emplace(e.id, std::move(r));
          return;
        } else {
          auto it = elections.find(e.id);
          if (it == elections.end()) corrupt("event for unknown election " + e.id);
          ElectionRecord &r = it->second;
          if constexpr (std::is_same_v<E, VoterRegistered>) {
            r.voters.push_back(e.voter);
          } else if constexpr (std::is_same_v<E, TokenConsumed>) {
            if (!r.usedTokens.insert(e.tokenHash).second) corrupt("token consumed twice");
          } else if constexpr (std::is_same_v<E, BallotAccepted>) {
            if (e.index != r.ballots.size()) corrupt("ballot index out of order in " + e.id);
            r.ballots.push_back(e.ballot);
          } else if constexpr (std::is_same_v<E, ElectionClosed>) {
            if (r.status != Status::Open) corrupt("election " + e.id + " closed twice");
            r.status = Status::Closed;
          } else {
            if (r.status != Status::Closed) corrupt("election " + e.id + " tallied before closing");
            r.status = Status::Tallied;
            r.result = e.result;
          }
        }
      },
      event);
}

bool EventStore::read(const ElectionId &id, const std::function<void(const ElectionRecord &)> &visit) const {
  std::shared_lock lock(mutex_);
  auto it = elections_.find(id);
  if (it == elections_.end()) return false;
  visit(it->second);
  return true;
}

std::optional<ElectionRecord> EventStore::find(const ElectionId &id) const {
  std::shared_lock lock(mutex_);
  auto it = elections_.find(id);
  if (it == elections_.end()) return std::nullopt;
  return it->second;
}

std::optional<Tombstone> EventStore::tombstone(const ElectionId &id) const {
  std::shared_lock lock(mutex_);
  auto it = tombstones_.find(id);
  if (it == tombstones_.end()) return std::nullopt;
  return it->second;
}

bool EventStore::exists(const ElectionId &id) const {
  std::shared_lock lock(mutex_);
  return elections_.contains(id) || tombstones_.contains(id);
}

std::uint64_t EventStore::sequence() const {
  std::shared_lock lock(mutex_);
  return sequence_;
}

void EventStore::append(const std::vector<Event> &batch) {
  std::unique_lock lock(mutex_);
  // Dry run on copies of the touched elections so a bad batch changes nothing.
  std::map<ElectionId, ElectionRecord> scratch;
  for (const auto &event : batch) {
    const ElectionId &id = std::visit([](const auto &e) -> const ElectionId & { return e.id; }, event);
    if (auto it = elections_.find(id); it != elections_.end()) scratch.emplace(id, it->second);
  }
  for (const auto &event : batch) applyEvent(scratch, event);

  std::string lines;
  std::uint64_t seq = sequence_;
  for (const auto &event : batch) lines += eventToJson(event, ++seq).dump() + "\n";
  log_ << lines;
  log_.flush();
  if (!log_) corrupt("write to " + eventLogPath().string() + " failed");

  for (auto &[id, record] : scratch) elections_[id] = std::move(record);
  sequence_ = seq;
  eventsSinceSnapshot_ += batch.size();
  if (snapshotEvery_ > 0 && eventsSinceSnapshot_ >= snapshotEvery_) compactLocked();
}

void EventStore::purge(const ElectionId &id, Tombstone tombstone) {
  std::unique_lock lock(mutex_);
  if (!elections_.erase(id)) corrupt("purge of unknown election " + id);
  tombstones_[id] = std::move(tombstone);
  compactLocked();
}

void EventStore::compact() {
  std::unique_lock lock(mutex_);
  compactLocked();
}

void EventStore::compactLocked() {
  Json snap;
  snap["sequence"] = sequence_;
  snap["elections"] = Json::array();
  for (const auto &[id, record] : elections_) snap["elections"].push_back(recordToJson(record));
  snap["tombstones"] = Json::array();
  for (const auto &[id, t] : tombstones_) {
    snap["tombstones"].push_back({{"id", t.id}, {"reason", t.reason}, {"invalidatedAt", t.invalidatedAt}});
  }

  fs::path tmp = directory_ / "snapshot.json.tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << snap.dump() << "\n";
    out.flush();
    if (!out) corrupt("cannot write " + tmp.string());
  }
  fs::rename(tmp, snapshotPath());
  openLog(true);
  eventsSinceSnapshot_ = 0;
}

}  // namespace evote::service
