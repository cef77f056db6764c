#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace micrep {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `position` is a byte offset into the parsed text.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error(message + " at offset " + std::to_string(position)),
        position_(position) {}

  /// "<source>:<line>: message"; position() is then the line number.
  ParseError(const std::string& source, std::size_t line, const std::string& message)
      : Error(source + ":" + std::to_string(line) + ": " + message), position_(line) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnboundVariable : public Error {
 public:
  explicit UnboundVariable(const std::string& name)
      : Error("unbound variable '" + name + "'"), name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class PreconditionViolation : public Error {
 public:
  using Error::Error;
};

/// A configured enumeration or combination limit was hit.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// Should be unreachable when the library is correct.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace micrep
