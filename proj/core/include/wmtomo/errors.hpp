#pragma once

#include <stdexcept>
#include <string>

namespace wmtomo {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotHermitian : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class BadTargets : public Error {
 public:
  using Error::Error;
};

class UnknownGate : public Error {
 public:
  using Error::Error;
};

class MissingCoupling : public Error {
 public:
  using Error::Error;
};

class NotTracePreserving : public Error {
 public:
  using Error::Error;
};

class ZeroMatrix : public Error {
 public:
  using Error::Error;
};

class UnsupportedPauli : public Error {
 public:
  using Error::Error;
};

class BadLabel : public Error {
 public:
  using Error::Error;
};

class NotOrthogonalBasis : public Error {
 public:
  using Error::Error;
};

class SingularConstraint : public Error {
 public:
  using Error::Error;
};

// Configuration error carrying the offending field for CLI diagnostics.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error("config error at '" + field + "': " + message),
        field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace wmtomo
