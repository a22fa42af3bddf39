#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace locbound {

/// Malformed or inconsistent input: unknown labels, invalid codes, bad parameters.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Input file that failed to parse. `line()` is 1-based.
class ParseError : public InputError {
 public:
  ParseError(const std::string& source, std::size_t line, const std::string& message)
      : InputError(source + ":" + std::to_string(line) + ": " + message), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Problem instance beyond what the dense representation is meant to handle.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace locbound
