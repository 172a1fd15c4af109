#pragma once

#include <cstddef>
#include <filesystem>
#include <mutex>
#include <vector>

#include "evote/service/domain.hpp"

namespace evote::service {

class NotificationSender {
 public:
  virtual ~NotificationSender() = default;
  /// Throws on failure; the record stays pending.
  virtual void send(const OutboxRecord &record) = 0;
};

/// Writes each notification as a text file `<n>.txt` in a directory.
class FileSender : public NotificationSender {
 public:
  explicit FileSender(std::filesystem::path directory);
  void send(const OutboxRecord &record) override;

 private:
  std::filesystem::path directory_;
  std::size_t next_{0};
};

/// Append-only notification log (`outbox.jsonl`) with a delivery cursor
/// (`delivered`). Thread-safe.
class Outbox {
 public:
  explicit Outbox(std::filesystem::path directory);

  void append(const std::vector<OutboxRecord> &records);
  std::vector<OutboxRecord> records() const;
  std::size_t pending() const;
  /// Sends pending records in order, stopping at the first failure.
  /// Returns the number delivered.
  std::size_t deliver(NotificationSender &sender);

  std::filesystem::path logPath() const { return directory_ / "outbox.jsonl"; }

 private:
  std::vector<OutboxRecord> readAll() const;
  std::size_t readCursor() const;

  std::filesystem::path directory_;
  mutable std::mutex mutex_;
};

}  // namespace evote::service
