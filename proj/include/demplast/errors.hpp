#pragma once

#include <stdexcept>
#include <string>

namespace demplast {

/// Base of all errors raised by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid or inconsistent problem configuration.
class ConfigError : public Error {
public:
  using Error::Error;
};

/// Malformed text input; carries the offending line when known.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what) {}

  std::size_t line() const { return line_; }

private:
  std::size_t line_ = 0;
};

/// Mesh failed validation (dangling index, inverted element, ...).
class MeshError : public Error {
public:
  using Error::Error;
};

/// Optimizer produced a non-finite loss or gradient and could not recover.
class DivergenceError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

}  // namespace demplast
