#pragma once

#include <stdexcept>
#include <string>

namespace qspa {

/// Error taxonomy used by the CLI exit-code mapping: validation errors
/// (bad inputs, dimension mismatches, budget) versus numeric failures
/// (non-CP maps, iteration non-convergence).
enum class ErrorKind { validation, numeric, budget, io };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& msg)
      : Error(ErrorKind::validation, msg) {}
};

/// Input was expected hermitian; carries the defect ||m - m^dagger||_F.
class HermiticityError : public Error {
 public:
  HermiticityError(const std::string& msg, double defect)
      : Error(ErrorKind::validation, msg), defect(defect) {}
  double defect;
};

/// Eigenvalue below the allowed negativity clip; carries the offender.
class PositivityError : public Error {
 public:
  PositivityError(const std::string& msg, double value)
      : Error(ErrorKind::validation, msg), value(value) {}
  double value;
};

class TraceError : public Error {
 public:
  TraceError(const std::string& msg, double trace)
      : Error(ErrorKind::validation, msg), trace(trace) {}
  double trace;
};

/// A map required to be completely positive is not; carries the minimal
/// Choi eigenvalue.
class NotCpError : public Error {
 public:
  NotCpError(const std::string& msg, double lambda_min)
      : Error(ErrorKind::numeric, msg), lambda_min(lambda_min) {}
  double lambda_min;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& msg, double residual)
      : Error(ErrorKind::numeric, msg), residual(residual) {}
  double residual;
};

/// Requested operator dimension exceeds the configured budget.
class BudgetError : public Error {
 public:
  BudgetError(const std::string& msg) : Error(ErrorKind::budget, msg) {}
};

}  // namespace qspa
