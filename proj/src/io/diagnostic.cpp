#include "evote/io/diagnostic.hpp"

namespace evote::io {

std::string_view name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::DuplicateCandidate: return "DuplicateCandidate";
    case ErrorKind::MissingParameter: return "MissingParameter";
    case ErrorKind::InvalidParameter: return "InvalidParameter";
    case ErrorKind::UnknownCandidate: return "UnknownCandidate";
    case ErrorKind::DuplicateInBallot: return "DuplicateInBallot";
    case ErrorKind::EmptyBallot: return "EmptyBallot";
    case ErrorKind::OutOfRangeScore: return "OutOfRangeScore";
  }
  return "?";
}

ErrorKind fromViolation(tally::Violation violation) {
  using tally::Violation;
  switch (violation) {
    case Violation::UnknownCandidate:
    case Violation::ReservedCandidate: return ErrorKind::UnknownCandidate;
    case Violation::DuplicateInBallot: return ErrorKind::DuplicateInBallot;
    case Violation::EmptyBallot: return ErrorKind::EmptyBallot;
    case Violation::OutOfRangeScore: return ErrorKind::OutOfRangeScore;
    case Violation::DuplicateCandidate: return ErrorKind::DuplicateCandidate;
    default: return ErrorKind::InvalidParameter;
  }
}

std::string Diagnostic::toString() const {
  std::string out;
  if (line > 0) out += std::to_string(line) + ":" + std::to_string(column) + ": ";
  out += name(kind);
  if (!message.empty()) out += ": " + message;
  return out;
}

namespace {

std::string summarize(const std::vector<Diagnostic> &diagnostics) {
  if (diagnostics.empty()) return "parse failed";
  std::string out = diagnostics.front().toString();
  if (diagnostics.size() > 1) out += " (and " + std::to_string(diagnostics.size() - 1) + " more)";
  return out;
}

}  // namespace

ParseError::ParseError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {
  if (diagnostics_.empty()) diagnostics_.push_back({ErrorKind::SyntaxError, 0, 0, "parse failed"});
}

}  // namespace evote::io
