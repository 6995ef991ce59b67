#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "nonlocal/dynamics.hpp"
#include "nonlocal/lyapunov.hpp"

namespace nonlocal {

struct EquilibriumResult {
  Field state;
  double residual = 0.0;     // ||rhs(u)||_inf
  double dissipation = 0.0;  // I(u); NaN when g^{-1} is unavailable
  double lyapunov = 0.0;     // F(u); NaN without a potential table
  std::size_t iterations = 0;
  std::vector<double> residual_history;
};

/// Damped iteration u <- (1 - alpha) u + alpha F(u) until ||u - F(u)||_inf <= tol.
/// Exceeding max_iter raises non_convergence carrying the last residual.
EquilibriumResult solve_equilibrium_fixed_point(const Model& model, std::span<const double> u0,
                                                double damping, double tol,
                                                std::size_t max_iter,
                                                const PotentialTable* table = nullptr);

inline constexpr std::size_t kGmresRestart = 30;
inline constexpr std::size_t kGmresMaxRestarts = 20;
inline constexpr std::size_t kNewtonMaxIterations = 50;
inline constexpr double kNewtonStartResidual = 0.1;

using LinearOperator = std::function<std::vector<double>(std::span<const double>)>;

struct GmresResult {
  std::vector<double> x;
  double residual = 0.0;  // ||b - A x||_2
  std::size_t iterations = 0;
  bool converged = false;
};

/// Restarted GMRES from x = 0 with an absolute 2-norm tolerance.
GmresResult gmres(const LinearOperator& A, std::span<const double> b, double tol,
                  std::size_t restart = kGmresRestart,
                  std::size_t max_restarts = kGmresMaxRestarts);

/// Newton iteration on rhs(u) = 0 with matrix-free GMRES for each correction
/// (linear tolerance tol / 10). Requires ||rhs(u)||_inf < 0.1; Krylov
/// stagnation or a non-decreasing residual raises refine_failure.
EquilibriumResult refine_newton(const Model& model, std::span<const double> u, double tol,
                                const PotentialTable* table = nullptr);

}  // namespace nonlocal
