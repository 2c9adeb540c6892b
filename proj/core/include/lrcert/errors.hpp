#pragma once

#include <stdexcept>
#include <string>

namespace lrcert {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

/// Graph is disconnected, a vertex id is out of range, or sets are malformed.
class GeometryError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "geometry"; }
};

/// Matrix or space dimensions do not agree.
class DimensionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "dimension"; }
};

/// Operator or state fails a validity check (Hermiticity, positivity, normalization).
class InvalidStateError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid-state"; }
};

/// A bound is evaluated outside the parameter regime in which it is stated.
class RegimeError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "regime"; }
};

/// Continuity inequality used outside its validity gate.
class ValidityError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "validity"; }
};

/// Malformed or inconsistent run configuration.
class ConfigError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "config"; }
};

}  // namespace lrcert
