#pragma once

#include <stdexcept>
#include <string>

namespace multiarr {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Mixing elements of different rings, variable counts, orders or ambients.
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/// Malformed user input (documents, expressions, option values).
class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(what) {}
};

/// Syntax error with a character position into the offending text.
class ParseError : public InputError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : InputError(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A prime that is not usable for the requested reduction.
class BadPrimeError : public Error {
 public:
  explicit BadPrimeError(const std::string& what) : Error(what) {}
};

/// Two independent computation paths disagreed. Always a bug.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace multiarr
