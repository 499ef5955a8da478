#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace taggedunify {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                           ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// A solver received a term outside its theory's signature.
class ImpureTerm : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration cap of the combination algorithm was hit.
class ChoiceSpaceExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The brute-force oracle's candidate space is larger than its ceiling.
class BoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace taggedunify
