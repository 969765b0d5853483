#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace msfmf {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Diagnostic raised while reading problem or interpretation text.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column),
        detail_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

/// The search space of an exhaustive check is larger than the caller's cap.
/// `space` is the exact size in decimal.
class CapExceeded : public Error {
 public:
  CapExceeded(std::string space, std::string cap)
      : Error("search space of " + space + " exceeds cap " + cap), space_(std::move(space)) {}

  const std::string& space() const { return space_; }

 private:
  std::string space_;
};

/// An interpretation or permutation whose shape does not match the problem.
class ShapeError : public Error {
 public:
  using Error::Error;
};

}  // namespace msfmf
