#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace freerack {

/// Base class for all freerack errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed word, element or expression text.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t position)
      : Error(message + " (at offset " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// A generator name outside the declared alphabet.
class UnknownGeneratorError : public Error {
 public:
  explicit UnknownGeneratorError(const std::string& name)
      : Error("unknown generator '" + name + "'") {}
};

/// Values from different word modes combined in one operation.
class ModeMismatchError : public Error {
 public:
  ModeMismatchError() : Error("word mode mismatch") {}
};

/// Two equal canonical class representatives where distinct ones are required.
class DuplicateClassError : public Error {
 public:
  explicit DuplicateClassError(const std::string& rep)
      : Error("duplicate conjugacy class " + rep) {}
};

/// A length bound too small to hold the inputs themselves.
class BoundTooSmallError : public Error {
 public:
  BoundTooSmallError(std::int64_t bound, std::int64_t needed)
      : Error("length bound " + std::to_string(bound) +
              " is smaller than a generator word of length " +
              std::to_string(needed)) {}
};

}  // namespace freerack
