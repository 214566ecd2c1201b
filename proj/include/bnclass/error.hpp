/// @file error.hpp
/// @brief Exception types shared across the library.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bnclass {

/// Malformed model, phenotype or expression text. Locations are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A configured size, count, iteration or time limit was exceeded.
class LimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The ideal is the whole ring, so its variety is empty.
class UnitIdeal : public std::runtime_error {
 public:
  UnitIdeal() : std::runtime_error("the ideal is the unit ideal (no steady states)") {}
};

}  // namespace bnclass
