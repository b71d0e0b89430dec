#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pgdeg {

/// Malformed or out-of-contract input (bad files, bad parameters, shape errors).
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

/// Parse failure carrying a 1-based source position.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : InputError("line " + std::to_string(line) + ", column " +
                   std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// An internal consistency assertion failed; results cannot be trusted.
class InvariantViolation : public std::logic_error {
 public:
  explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

/// Cooperative cancellation of a long-running computation.
class Timeout : public std::runtime_error {
 public:
  Timeout() : std::runtime_error("time limit exceeded") {}
};

}  // namespace pgdeg
