#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace matchstick {

enum class ErrorKind {
  InvalidArgument,
  InvalidGraph,
  DegenerateInput,
  Parse,
  IndexOutOfRange,
  DuplicateEdge,
  MarkerUnresolved,
  AmbiguousVertices,
  Inconsistent,
  Gauge,
  Disconnected,
  NoFlex,
  StepTooLarge,
  Stall,
  Budget,
  Geometry,
  Internal,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for every failure raised by the library. The kind lets
/// callers (the CLI in particular) map failures onto exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure carrying the 1-based line number where it occurred.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message, ErrorKind kind = ErrorKind::Parse)
      : Error(kind, "line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace matchstick
