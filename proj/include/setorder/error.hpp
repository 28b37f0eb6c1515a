#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace setorder {

/// Base class for every error raised by the library. The CLI maps these to
/// exit code 64 (usage/schema) or 1 (a failed computation) depending on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  DimensionMismatch(std::size_t expected, std::size_t got)
      : Error("dimension mismatch: expected " + std::to_string(expected) +
              ", got " + std::to_string(got)) {}
};

/// The cone has empty interior.
class NotSolid : public Error {
 public:
  using Error::Error;
};

/// A representation/cone combination the exact predicates cannot handle.
class Unsupported : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ContainmentNotEstablished : public Error {
 public:
  using Error::Error;
};

/// Malformed set: empty interval, infinite lower end, ragged dimensions.
class InvalidSet : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column)
      : Error("parse error at " + std::to_string(line) + ":" +
              std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class UnboundVariable : public Error {
 public:
  using Error::Error;
};

/// Problem/family file does not match the schema or violates a load-time check.
class SchemaError : public Error {
 public:
  using Error::Error;
};

class NoMatchingPiece : public Error {
 public:
  using Error::Error;
};

class HorizonExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace setorder
