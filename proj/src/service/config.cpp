#include "evote/service/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>

namespace evote::service {

Environment processEnvironment() {
  return [](const std::string &key) -> std::optional<std::string> {
    const char *value = std::getenv(key.c_str());
    if (!value) return std::nullopt;
    return std::string(value);
  };
}

namespace {

void setListen(ServerConfig &config, const std::string &listen) {
  auto colon = listen.rfind(':');
  if (colon == std::string::npos || colon == 0) throw ConfigError("listen must be host:port, got '" + listen + "'");
  int port = 0;
  const char *begin = listen.data() + colon + 1;
  const char *end = listen.data() + listen.size();
  auto [ptr, ec] = std::from_chars(begin, end, port);
  if (ec != std::errc() || ptr != end || port < 0 || port > 65535) {
    throw ConfigError("bad port in listen '" + listen + "'");
  }
  config.host = listen.substr(0, colon);
  config.port = port;
}

void setEnforcement(ServerConfig &config, const std::string &value) {
  auto mode = parseEnforcementMode(value);
  if (!mode) throw ConfigError("enforcement must be precheck or halt, got '" + value + "'");
  config.enforcement = *mode;
}

}  // namespace

ServerConfig loadConfig(const std::optional<std::filesystem::path> &file, const Environment &env) {
  ServerConfig config;
  if (file) {
    std::ifstream in(*file);
    if (!in) throw ConfigError("cannot read " + file->string());
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error &e) {
      throw ConfigError(file->string() + ": " + e.what());
    }
    if (!j.is_object()) throw ConfigError(file->string() + ": expected an object");
    try {
      for (const auto &[key, value] : j.items()) {
        if (key == "listen") {
          setListen(config, value.get<std::string>());
        } else if (key == "store") {
          config.store = value.get<std::string>();
        } else if (key == "outbox") {
          config.outbox = value.get<std::string>();
        } else if (key == "enforcement") {
          setEnforcement(config, value.get<std::string>());
        } else if (key == "corsOrigin") {
          config.corsOrigin = value.get<std::string>();
        } else if (key == "snapshotEvery") {
          config.snapshotEvery = value.get<std::size_t>();
        } else {
          throw ConfigError(file->string() + ": unknown key '" + key + "'");
        }
      }
    } catch (const nlohmann::json::type_error &e) {
      throw ConfigError(file->string() + ": " + e.what());
    }
  }
  if (auto v = env("EVOTE_LISTEN")) setListen(config, *v);
  if (auto v = env("EVOTE_STORE")) config.store = *v;
  if (auto v = env("EVOTE_OUTBOX")) config.outbox = *v;
  if (auto v = env("EVOTE_ENFORCEMENT")) setEnforcement(config, *v);
  if (auto v = env("EVOTE_CORS_ORIGIN")) config.corsOrigin = *v;
  return config;
}

}  // namespace evote::service
