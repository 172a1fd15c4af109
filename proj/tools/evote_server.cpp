// evote-server: HTTP front end for live elections.

#include <csignal>
#include <iostream>

#include "CLI11.hpp"
#include "evote/service/config.hpp"
#include "evote/service/election_service.hpp"
#include "evote/service/http_api.hpp"
#include "httplib.h"

namespace {

httplib::Server *running = nullptr;

void stop(int) {
  if (running) running->stop();
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Election service"};
  std::string configPath;
  app.add_option("--config", configPath, "JSON configuration file");
  CLI11_PARSE(app, argc, argv);

  evote::service::ServerConfig config;
  try {
    config = evote::service::loadConfig(configPath.empty() ? std::nullopt : std::optional(configPath),
                                        evote::service::processEnvironment());
  } catch (const evote::service::ConfigError &e) {
    std::cerr << "config: " << e.what() << "\n";
    return 2;
  }

  try {
    evote::service::ServiceOptions options;
    options.storeDirectory = config.store;
    options.outboxDirectory = config.outbox;
    options.enforcement = config.enforcement;
    options.snapshotEvery = config.snapshotEvery;
    options.sender = std::make_shared<evote::service::FileSender>(config.outbox / "sent");
    evote::service::ElectionService service(options);

    httplib::Server server;
    evote::service::mountApi(server, service, {config.corsOrigin});
    running = &server;
    std::signal(SIGINT, stop);
    std::signal(SIGTERM, stop);
    std::cerr << "listening on " << config.host << ":" << config.port << " (" << name(config.enforcement)
              << " mode, store " << config.store << ")\n";
    if (!server.listen(config.host, config.port)) {
      std::cerr << "cannot listen on " << config.host << ":" << config.port << "\n";
      return 1;
    }
  } catch (const std::exception &e) {
    std::cerr << "fatal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
