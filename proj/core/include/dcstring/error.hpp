#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace dcstring {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed coefficient expression. `position` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& detail, std::size_t position)
      : Error(detail + " at position " + std::to_string(position)), detail_(detail), position_(position) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t position_;
};

/// Input that parses but violates a precondition (positivity, ordering, ranges).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what, std::optional<double> where = std::nullopt)
      : Error(what), where_(where) {}

  /// Offending sample point, when the violation is pointwise.
  std::optional<double> where() const noexcept { return where_; }

 private:
  std::optional<double> where_;
};

/// A numerical procedure could not deliver its postcondition.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace dcstring
