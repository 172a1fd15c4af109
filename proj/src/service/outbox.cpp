#include "evote/service/outbox.hpp"

#include <fstream>

#include "evote/service/store.hpp"

namespace evote::service {

namespace fs = std::filesystem;

FileSender::FileSender(fs::path directory) : directory_(std::move(directory)) {
  fs::create_directories(directory_);
  while (fs::exists(directory_ / (std::to_string(next_) + ".txt"))) ++next_;
}

void FileSender::send(const OutboxRecord &record) {
  fs::path path = directory_ / (std::to_string(next_) + ".txt");
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << "To: " << record.recipient << "\n"
      << "Date: " << record.timestamp << "\n"
      << "Subject: election " << record.electionId << " was invalidated\n\n"
      << "The election has been deleted and will not produce a result.\n"
      << "Reason: " << record.reason << "\n";
  out.flush();
  if (!out) throw std::runtime_error("cannot write " + path.string());
  ++next_;
}

Outbox::Outbox(fs::path directory) : directory_(std::move(directory)) { fs::create_directories(directory_); }

void Outbox::append(const std::vector<OutboxRecord> &records) {
  std::lock_guard lock(mutex_);
  std::string lines;
  for (const auto &r : records) {
    nlohmann::ordered_json j{{"recipient", r.recipient},
                             {"electionId", r.electionId},
                             {"reason", r.reason},
                             {"timestamp", r.timestamp}};
    lines += j.dump() + "\n";
  }
  std::ofstream out(logPath(), std::ios::binary | std::ios::app);
  out << lines;
  out.flush();
  if (!out) throw StoreError("outbox: write failed");
}

std::vector<OutboxRecord> Outbox::readAll() const {
  std::vector<OutboxRecord> out;
  std::ifstream in(logPath(), std::ios::binary);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      auto j = nlohmann::json::parse(line);
      out.push_back({j.at("recipient").get<std::string>(), j.at("electionId").get<std::string>(),
                     j.at("reason").get<std::string>(), j.at("timestamp").get<std::string>()});
    } catch (const nlohmann::json::exception &e) {
      throw StoreError(std::string("outbox: unreadable record: ") + e.what());
    }
  }
  return out;
}

std::size_t Outbox::readCursor() const {
  std::ifstream in(directory_ / "delivered");
  std::size_t cursor = 0;
  in >> cursor;
  return cursor;
}

std::vector<OutboxRecord> Outbox::records() const {
  std::lock_guard lock(mutex_);
  return readAll();
}

std::size_t Outbox::pending() const {
  std::lock_guard lock(mutex_);
  auto all = readAll();
  std::size_t cursor = readCursor();
  return cursor >= all.size() ? 0 : all.size() - cursor;
}

std::size_t Outbox::deliver(NotificationSender &sender) {
  std::lock_guard lock(mutex_);
  auto all = readAll();
  std::size_t cursor = readCursor();
  std::size_t sent = 0;
  for (; cursor < all.size(); ++cursor, ++sent) {
    try {
      sender.send(all[cursor]);
    } catch (const std::exception &) {
      break;
    }
    std::ofstream(directory_ / "delivered", std::ios::trunc) << cursor + 1 << "\n";
  }
  return sent;
}

}  // namespace evote::service
