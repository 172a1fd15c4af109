#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include "evote/service/domain.hpp"

namespace evote::service {

struct ServerConfig {
  std::string host{"127.0.0.1"};
  int port{8080};
  std::filesystem::path store{"evote-data/store"};
  std::filesystem::path outbox{"evote-data/outbox"};
  EnforcementMode enforcement{EnforcementMode::Precheck};
  std::optional<std::string> corsOrigin;
  std::size_t snapshotEvery{256};
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Environment = std::function<std::optional<std::string>(const std::string &)>;
Environment processEnvironment();

/// Defaults, then the JSON file (keys listen, store, outbox, enforcement,
/// corsOrigin, snapshotEvery), then EVOTE_LISTEN, EVOTE_STORE,
/// EVOTE_OUTBOX, EVOTE_ENFORCEMENT, EVOTE_CORS_ORIGIN. `listen` is "host:port".
/// Throws ConfigError.
ServerConfig loadConfig(const std::optional<std::filesystem::path> &file, const Environment &env);

}  // namespace evote::service
