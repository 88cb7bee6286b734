#pragma once

#include <stdexcept>
#include <string>

namespace walkoff {

/// Input outside the domain of a physical model (wavelength range, angle, z).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure failed: no root bracket, SVD or quadrature did not converge.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PhaseMatchError : public NumericError {
 public:
  using NumericError::NumericError;
};

class OracleConvergenceError : public NumericError {
 public:
  OracleConvergenceError(const std::string& what, double coarse_abs, double fine_abs)
      : NumericError(what), coarse_abs_(coarse_abs), fine_abs_(fine_abs) {}
  double coarse_estimate() const { return coarse_abs_; }
  double fine_estimate() const { return fine_abs_; }

 private:
  double coarse_abs_;
  double fine_abs_;
};

/// Malformed configuration text; `line()` is 1-based, 0 when not tied to a line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace walkoff
