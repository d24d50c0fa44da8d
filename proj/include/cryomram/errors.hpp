#pragma once

#include <stdexcept>
#include <string>

namespace cryomram {

/// Base of every error thrown by the library. `exit_code()` follows the CLI
/// contract: 2 validation, 3 numerical failure, 4 I/O.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
  virtual int exit_code() const noexcept { return 2; }
  virtual const char* kind() const noexcept { return "error"; }
};

/// Argument outside the domain where a law or model is defined.
class DomainError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

/// Physically inconsistent deck (e.g. in-plane instability, K_eff <= 0).
class ConfigError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "config"; }
};

/// Anchors that cannot be inverted into a valid 0 K deck.
class CalibrationError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "calibration"; }
};

/// Malformed deck or report file; message carries line/field diagnostics.
class ParseError : public Error {
public:
  using Error::Error;
  const char* kind() const noexcept override { return "parse"; }
};

/// Iterative solver failed to converge; message carries the trace.
class SolverError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
  const char* kind() const noexcept override { return "solver"; }
};

/// Integrator or estimator gave up (step rejection, unreachable target).
class NumericalError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 3; }
  const char* kind() const noexcept override { return "numerical"; }
};

class IoError : public Error {
public:
  using Error::Error;
  int exit_code() const noexcept override { return 4; }
  const char* kind() const noexcept override { return "io"; }
};

}  // namespace cryomram
