#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace simnet {

enum class ErrorKind {
  InvalidIdentifier,
  InvalidEntity,
  NoDomain,
  InvalidInput,
  InvalidClock,
  NotFound,
  NoEntities,
  Parse,
  Integrity,
  Vocabulary,
  DanglingReference,
  InconsistentInput,
  Parameter,
  Io,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidIdentifier: return "invalid identifier";
    case ErrorKind::InvalidEntity: return "invalid entity";
    case ErrorKind::NoDomain: return "no domain";
    case ErrorKind::InvalidInput: return "invalid input";
    case ErrorKind::InvalidClock: return "invalid clock";
    case ErrorKind::NotFound: return "not found";
    case ErrorKind::NoEntities: return "no entities";
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::Integrity: return "integrity error";
    case ErrorKind::Vocabulary: return "vocabulary error";
    case ErrorKind::DanglingReference: return "dangling reference";
    case ErrorKind::InconsistentInput: return "inconsistent input";
    case ErrorKind::Parameter: return "parameter error";
    case ErrorKind::Io: return "i/o error";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Raised by line-oriented readers; line numbers are 1-based.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& message, ErrorKind kind = ErrorKind::Parse)
      : Error(kind, "line " + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace simnet
