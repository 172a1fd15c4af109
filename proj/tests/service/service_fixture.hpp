#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "evote/service/election_service.hpp"
#include "support/temp_dir.hpp"

namespace evote::testing {

inline io::ElectionDefinition definition(io::Method method, std::size_t candidates) {
  io::ElectionDefinition d;
  d.method = method;
  for (std::size_t i = 1; i <= candidates; ++i) {
    d.candidates.push_back({tally::CandidateId(static_cast<std::uint32_t>(i)), "Candidate " + std::to_string(i)});
  }
  switch (method) {
    case io::Method::Stv: d.seats = 1; break;
    case io::Method::Borda: d.maxTiedPlacements = 1; break;
    case io::Method::Score:
      d.minScore = 0;
      d.maxScore = 5;
      break;
    case io::Method::Irv: break;
  }
  return d;
}

inline service::BallotPayload ranking(std::initializer_list<unsigned> ids) {
  tally::PreferenceBallot b;
  for (unsigned c : ids) b.emplace_back(c);
  return b;
}

inline service::BallotPayload scores(std::initializer_list<std::pair<unsigned, std::int64_t>> entries) {
  tally::ScoreBallot b;
  for (auto [c, s] : entries) b[tally::CandidateId(c)] = s;
  return b;
}

inline std::string slurp(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// A service over a directory that outlives it, so tests can reopen it.
struct ServiceFixture {
  explicit ServiceFixture(service::EnforcementMode mode = service::EnforcementMode::Precheck,
                          std::size_t snapshotEvery = 256)
      : dir("evote-service"), mode(mode), snapshotEvery(snapshotEvery) {
    open();
  }

  service::ServiceOptions options() const {
    service::ServiceOptions o;
    o.storeDirectory = dir / "store";
    o.outboxDirectory = dir / "outbox";
    o.enforcement = mode;
    o.snapshotEvery = snapshotEvery;
    o.clock = [] { return std::string("2024-01-01T00:00:00Z"); };
    o.sender = sender;
    return o;
  }
  const service::EventStore &store() const { return svc->store(); }
  void open() { svc = std::make_unique<service::ElectionService>(options()); }
  void close() { svc.reset(); }
  void reopen() {
    close();
    open();
  }

  /// Every byte the service has persisted, outbox excluded.
  std::string storeBytes() const {
    std::string all;
    for (const auto &entry : std::filesystem::directory_iterator(dir / "store")) all += slurp(entry.path());
    return all;
  }

  TempDir dir;
  service::EnforcementMode mode;
  std::size_t snapshotEvery;
  std::shared_ptr<service::NotificationSender> sender;
  std::unique_ptr<service::ElectionService> svc;
};

}  // namespace evote::testing
