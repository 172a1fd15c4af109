#include "evote/service/http_api.hpp"

#include "httplib.h"

namespace evote::service {

using Json = nlohmann::ordered_json;

int httpStatus(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotFound: return 404;
    case ErrorCode::InvalidDefinition:
    case ErrorCode::InvalidBallot:
    case ErrorCode::InvalidToken:
    case ErrorCode::InvalidRequest: return 400;
    case ErrorCode::ElectionClosed:
    case ErrorCode::TokenUsed:
    case ErrorCode::NotTallied:
    case ErrorCode::AlreadyTallied:
    case ErrorCode::ValidationFailure: return 409;
  }
  return 500;
}

Json summaryToJson(const ElectionSummary &s) {
  Json out;
  out["id"] = s.id;
  out["status"] = name(s.status);
  out["createdAt"] = s.createdAt;
  out["definition"] = io::definitionToJson(s.definition);
  out["voters"] = s.voters;
  out["ballots"] = s.ballots;
  return out;
}

Json errorToJson(const ServiceError &error) {
  Json out;
  out["error"] = name(error.code());
  out["message"] = error.what();
  if (error.kind()) out["kind"] = io::name(*error.kind());
  if (error.tombstone()) {
    out["reason"] = error.tombstone()->reason;
    out["invalidatedAt"] = error.tombstone()->invalidatedAt;
  }
  return out;
}

namespace {

void reply(httplib::Response &res, int status, const Json &body) {
  res.status = status;
  res.set_content(body.dump() + "\n", "application/json");
}

nlohmann::json parseBody(const httplib::Request &req) {
  try {
    return nlohmann::json::parse(req.body);
  } catch (const nlohmann::json::parse_error &) {
    throw ServiceError(ErrorCode::InvalidRequest, "request body is not valid JSON");
  }
}

std::string stringField(const nlohmann::json &body, const char *key) {
  if (!body.is_object() || !body.contains(key) || !body[key].is_string()) {
    throw ServiceError(ErrorCode::InvalidRequest, std::string("'") + key + "' must be a string");
  }
  return body[key].get<std::string>();
}

/// Runs `handle`, turning ServiceError into its JSON error reply.
template <typename Handle>
httplib::Server::Handler guarded(Handle handle) {
  return [handle](const httplib::Request &req, httplib::Response &res) {
    try {
      handle(req, res);
    } catch (const ServiceError &e) {
      reply(res, httpStatus(e.code()), errorToJson(e));
    }
  };
}

}  // namespace

void mountApi(httplib::Server &server, ElectionService &service, const ApiOptions &options) {
  server.Post("/elections", guarded([&service](const httplib::Request &req, httplib::Response &res) {
                io::ElectionDefinition definition;
                try {
                  definition = io::definitionFromJson(parseBody(req));
                } catch (const io::ParseError &e) {
                  throw ServiceError(ErrorCode::InvalidDefinition, e.diagnostics().front().message, e.kind());
                }
                reply(res, 201, summaryToJson(service.createElection(definition)));
              }));

  server.Post(R"(/elections/([^/]+)/voters)",
              guarded([&service](const httplib::Request &req, httplib::Response &res) {
                auto token = service.registerVoter(req.matches[1], stringField(parseBody(req), "contact"));
                reply(res, 201, Json{{"electionId", req.matches[1]}, {"token", token}});
              }));

  server.Post(R"(/elections/([^/]+)/ballots)",
              guarded([&service](const httplib::Request &req, httplib::Response &res) {
                auto body = parseBody(req);
                auto token = stringField(body, "token");
                nlohmann::json ballot = body;
                ballot.erase("token");
                auto receipt = service.castBallot(req.matches[1], token, payloadFromJson(ballot));
                reply(res, 201, Json{{"electionId", receipt.electionId}, {"receipt", receipt.ballotHash}});
              }));

  server.Post(R"(/elections/([^/]+)/close)", guarded([&service](const httplib::Request &req, httplib::Response &res) {
                reply(res, 200, io::resultToJson(service.closeAndTally(req.matches[1])));
              }));

  server.Get(R"(/elections/([^/]+)/result)", guarded([&service](const httplib::Request &req, httplib::Response &res) {
               reply(res, 200, io::resultToJson(service.getResult(req.matches[1])));
             }));

  server.Get(R"(/elections/([^/]+))", guarded([&service](const httplib::Request &req, httplib::Response &res) {
               reply(res, 200, summaryToJson(service.getElection(req.matches[1])));
             }));

  server.set_exception_handler([](const httplib::Request &, httplib::Response &res, std::exception_ptr ep) {
    std::string message = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception &e) {
      message = e.what();
    } catch (...) {
    }
    reply(res, 500, Json{{"error", "Internal"}, {"message", message}});
  });

  if (options.corsOrigin) {
    server.set_default_headers({{"Access-Control-Allow-Origin", *options.corsOrigin},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(/elections.*)", [](const httplib::Request &, httplib::Response &res) { res.status = 204; });
  }
}

}  // namespace evote::service
