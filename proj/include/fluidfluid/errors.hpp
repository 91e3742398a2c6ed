#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fluidfluid {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  /// Short machine-readable category, used in the CLI's error JSON.
  virtual const char* kind() const noexcept { return "error"; }
};

/// Invalid arguments: bad sizes, mismatched meshes or spaces, bad parameters.
class ValidationError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "validation"; }
};

class ConfigError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "config"; }
};

/// A point was looked up outside the subdomain it was evaluated on.
class LocationError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "location"; }
};

class SingularMatrixError : public Error {
 public:
  SingularMatrixError(std::size_t pivot_row, double pivot_value);
  const char* kind() const noexcept override { return "singular_matrix"; }
  std::size_t pivot_row() const noexcept { return pivot_row_; }

 private:
  std::size_t pivot_row_;
};

/// The resolvent block on the upper domain failed to factorize; lambda is
/// too small for the background flow.
class CoercivityError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "coercivity"; }
};

/// Iterative procedure did not converge.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, double residual);
  const char* kind() const noexcept override { return "numerical_failure"; }
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace fluidfluid
