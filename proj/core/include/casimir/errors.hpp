#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

// Base class of everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the domain of the model or routine.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Adaptive refinement or series summation failed to reach the requested
// tolerance. The best estimate is kept so callers can decide what to do.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double estimate, double error_bound)
      : Error(what), estimate_(estimate), error_bound_(error_bound) {}
  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

// No sign change inside the interval handed to a bracketing root finder.
class BracketError : public Error {
 public:
  using Error::Error;
};

// The requested operation is not defined for this dielectric model.
class UnsupportedModelError : public Error {
 public:
  using Error::Error;
};

// The static permittivity diverges where a finite one is required.
class StaticPermittivityError : public Error {
 public:
  using Error::Error;
};

// Bad configuration or input file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A branch root could not be isolated at some wavevector.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, double k, double lo, double hi)
      : Error(what), k_(k), lo_(lo), hi_(hi) {}
  double k() const noexcept { return k_; }
  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

 private:
  double k_;
  double lo_;
  double hi_;
};

}  // namespace casimir
