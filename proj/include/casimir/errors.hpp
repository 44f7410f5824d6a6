#pragma once

#include <stdexcept>
#include <string>

namespace casimir {

/// Input outside the mathematical domain of an operation (pole coincidence,
/// R = 0, empty transition list, ambiguous square-root branch, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Quadrature or series evaluation failed to reach the requested tolerance.
/// Carries the best estimate so callers can report diagnostics.
class NumericalError : public std::runtime_error {
public:
  NumericalError(const std::string& what, double estimate, double error, long evaluations)
      : std::runtime_error(what), estimate_(estimate), error_(error), evaluations_(evaluations) {}

  double estimate() const noexcept { return estimate_; }
  double error() const noexcept { return error_; }
  long evaluations() const noexcept { return evaluations_; }

private:
  double estimate_;
  double error_;
  long evaluations_;
};

} // namespace casimir
