#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace elastica {

enum class ErrorKind {
  InvalidArgument,
  InjectivityViolation,
  ImmersionViolation,
  AdjacencyViolation,
  TimeAdjacencyViolation,
  SolverFailure,
  UnsupportedOrder,
  InitFailure,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

/// Domain error raised by every elastica operation. The kind is stable and
/// is what callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::InjectivityViolation: return "injectivity-violation";
    case ErrorKind::ImmersionViolation: return "immersion-violation";
    case ErrorKind::AdjacencyViolation: return "adjacency-violation";
    case ErrorKind::TimeAdjacencyViolation: return "time-adjacency-violation";
    case ErrorKind::SolverFailure: return "solver-failure";
    case ErrorKind::UnsupportedOrder: return "unsupported-order";
    case ErrorKind::InitFailure: return "init-failure";
    case ErrorKind::ParseError: return "parse-error";
  }
  return "unknown";
}

}  // namespace elastica
