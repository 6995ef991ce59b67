#include "nonlocal/error.hpp"

namespace nonlocal {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::degenerate_domain: return "degenerate-domain";
    case ErrorKind::invalid_exponent: return "invalid-exponent";
    case ErrorKind::asymmetric_kernel: return "asymmetric-kernel";
    case ErrorKind::kernel_sign: return "kernel-sign";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::numerical_overflow: return "numerical-overflow";
    case ErrorKind::invalid_step: return "invalid-step";
    case ErrorKind::divergence: return "divergence";
    case ErrorKind::hypothesis_violation: return "hypothesis-violation";
    case ErrorKind::domain: return "domain";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::no_interior_minimum: return "no-interior-minimum";
    case ErrorKind::non_convergence: return "non-convergence";
    case ErrorKind::refine_failure: return "refine-failure";
    case ErrorKind::contraction_failure: return "contraction-failure";
    case ErrorKind::invalid_certificate: return "invalid-certificate";
    case ErrorKind::parse: return "parse";
    case ErrorKind::validation: return "validation";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

DivergenceError::DivergenceError(double time, const std::string& message)
    : Error(ErrorKind::divergence, message), time_(time) {}

NonConvergenceError::NonConvergenceError(ErrorKind kind, double residual,
                                         std::size_t iterations, const std::string& message)
    : Error(kind, message), residual_(residual), iterations_(iterations) {}

}  // namespace nonlocal
