#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace baslab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RankMismatch : public Error {
 public:
  RankMismatch(std::size_t expected, std::size_t got)
      : Error("rank mismatch: expected " + std::to_string(expected) + ", got " +
              std::to_string(got)) {}
};

/// Malformed textual input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(format(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(const std::string& what, std::size_t line, std::size_t column) {
    std::string where;
    if (line > 0) where += "line " + std::to_string(line) + ", ";
    if (column > 0) where += "column " + std::to_string(column) + ": ";
    return "parse error at " + where + what;
  }

  std::size_t line_;
  std::size_t column_;
};

/// A condition that the mathematics guarantees cannot happen was observed.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error("internal error: " + what) {}
};

}  // namespace baslab
