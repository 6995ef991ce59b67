#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nonlocal {

enum class ErrorKind {
  degenerate_domain,
  invalid_exponent,
  asymmetric_kernel,
  kernel_sign,
  dimension_mismatch,
  numerical_overflow,
  invalid_step,
  divergence,
  hypothesis_violation,
  domain,
  out_of_range,
  no_interior_minimum,
  non_convergence,
  refine_failure,
  contraction_failure,
  invalid_certificate,
  parse,
  validation,
  io,
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by time integration when the state stops being finite.
class DivergenceError : public Error {
 public:
  DivergenceError(double time, const std::string& message);
  double time() const noexcept { return time_; }

 private:
  double time_;
};

/// Raised by iterative solvers that exhaust their iteration budget.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(ErrorKind kind, double residual, std::size_t iterations,
                      const std::string& message);
  double residual() const noexcept { return residual_; }
  std::size_t iterations() const noexcept { return iterations_; }

 private:
  double residual_;
  std::size_t iterations_;
};

}  // namespace nonlocal
