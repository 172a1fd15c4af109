#pragma once

#include <optional>
#include <string>

#include "evote/service/election_service.hpp"

namespace httplib {
class Server;
}

namespace evote::service {

struct ApiOptions {
  /// Sent as Access-Control-Allow-Origin when set.
  std::optional<std::string> corsOrigin;
};

/// Routes:
///   POST /elections                 201 summary          400
///   POST /elections/{id}/voters     201 {"token"}        400 404 409
///   POST /elections/{id}/ballots    201 receipt          400 404 409
///   POST /elections/{id}/close      200 result           404 409
///   GET  /elections/{id}            200 summary          404
///   GET  /elections/{id}/result     200 result           404 409
/// Errors are {"error": code, "message": ..., ["kind"], ["reason", "invalidatedAt"]}.
void mountApi(httplib::Server &server, ElectionService &service, const ApiOptions &options = {});

int httpStatus(ErrorCode code);
nlohmann::ordered_json summaryToJson(const ElectionSummary &summary);
nlohmann::ordered_json errorToJson(const ServiceError &error);

}  // namespace evote::service
