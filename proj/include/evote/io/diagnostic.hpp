#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "evote/tally/errors.hpp"

namespace evote::io {

enum class ErrorKind {
  SyntaxError,
  DuplicateCandidate,
  MissingParameter,
  InvalidParameter,
  UnknownCandidate,
  DuplicateInBallot,
  EmptyBallot,
  OutOfRangeScore,
};

std::string_view name(ErrorKind kind);

/// The ballot-level rule a core precondition violation corresponds to.
/// Violations that cannot arise from a validated definition map to InvalidParameter.
ErrorKind fromViolation(tally::Violation violation);

/// line and column are 1-based; 0 means the diagnostic concerns the whole input.
struct Diagnostic {
  ErrorKind kind{ErrorKind::SyntaxError};
  std::size_t line{0};
  std::size_t column{0};
  std::string message;

  /// "3:5: DuplicateInBallot: candidate 1 ranked twice"
  std::string toString() const;
  friend bool operator==(const Diagnostic &, const Diagnostic &) = default;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic> &diagnostics() const { return diagnostics_; }
  ErrorKind kind() const { return diagnostics_.front().kind; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace evote::io
