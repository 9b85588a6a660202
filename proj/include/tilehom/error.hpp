#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tilehom {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Caller passed something the operation is not defined for (unknown cell,
/// unknown catalog name, bad dimensions).
class UsageError : public Error {
 public:
  using Error::Error;
};

/// A surface grid violates a structural invariant (inconsistent gluing,
/// double-glued edge, edge glued to itself).
class GridError : public Error {
 public:
  using Error::Error;
};

/// A `.srf` or `.tiles` document failed to parse. Line and column are 1-based;
/// column 0 means "whole line".
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An internal self-check failed (an emitted artifact did not re-verify).
class SelfCheckError : public Error {
 public:
  using Error::Error;
};

}  // namespace tilehom
