#include "nonlocal/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nonlocal/error.hpp"
#include "nonlocal/io_format.hpp"

namespace nonlocal {
namespace {

double sup_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double two_norm(std::span<const double> v) {
  return std::sqrt(pairwise_sum(0, v.size(), [&](std::size_t i) { return v[i] * v[i]; }));
}

double dot(std::span<const double> a, std::span<const double> b) {
  return pairwise_sum(0, a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

EquilibriumResult finish(const Model& model, std::vector<double> u, std::size_t iterations,
                         std::vector<double> history, const PotentialTable* table) {
  EquilibriumResult r;
  r.residual = sup_norm(rhs(model, u));
  r.iterations = iterations;
  r.residual_history = std::move(history);
  try {
    r.dissipation = dissipation_I(model, u);
  } catch (const Error&) {
    r.dissipation = std::numeric_limits<double>::quiet_NaN();
  }
  r.lyapunov = std::numeric_limits<double>::quiet_NaN();
  if (table != nullptr) r.lyapunov = lyapunov_F(model, *table, u);
  r.state = Field{std::move(u), 0.0};
  return r;
}

}  // namespace

EquilibriumResult solve_equilibrium_fixed_point(const Model& model, std::span<const double> u0,
                                                double damping, double tol,
                                                std::size_t max_iter,
                                                const PotentialTable* table) {
  require_same_size(model.grid(), u0);
  if (!(damping > 0.0 && damping <= 1.0)) {
    throw Error(ErrorKind::validation, "damping must lie in (0, 1]");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::validation, "tolerance must be positive");
  std::vector<double> u(u0.begin(), u0.end());
  std::vector<double> history;
  double residual = kInfinity;
  for (std::size_t it = 0; it <= max_iter; ++it) {
    const std::vector<double> F = map_F(model, u);
    residual = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) residual = std::max(residual, std::abs(F[i] - u[i]));
    history.push_back(residual);
    if (!std::isfinite(residual)) break;
    if (residual <= tol) return finish(model, std::move(u), it, std::move(history), table);
    if (it == max_iter) break;
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = (1.0 - damping) * u[i] + damping * F[i];
  }
  throw NonConvergenceError(ErrorKind::non_convergence, residual, max_iter,
                            "fixed-point iteration stopped at residual " +
                                format_double(residual));
}

GmresResult gmres(const LinearOperator& A, std::span<const double> b, double tol,
                  std::size_t restart, std::size_t max_restarts) {
  const std::size_t n = b.size();
  GmresResult out;
  out.x.assign(n, 0.0);
  std::vector<double> r(b.begin(), b.end());
  double beta = two_norm(r);
  out.residual = beta;
  if (beta <= tol) {
    out.converged = true;
    return out;
  }
  const std::size_t m = std::max<std::size_t>(1, std::min(restart, n));
  for (std::size_t cycle = 0; cycle < max_restarts; ++cycle) {
    std::vector<std::vector<double>> V(m + 1, std::vector<double>(n, 0.0));
    std::vector<std::vector<double>> H(m + 1, std::vector<double>(m, 0.0));
    std::vector<double> cs(m, 0.0), sn(m, 0.0), g(m + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) V[0][i] = r[i] / beta;
    g[0] = beta;
    std::size_t k = 0;
    for (; k < m; ++k) {
      std::vector<double> w = A(V[k]);
      // Modified Gram-Schmidt.
      for (std::size_t j = 0; j <= k; ++j) {
        H[j][k] = dot(w, V[j]);
        for (std::size_t i = 0; i < n; ++i) w[i] -= H[j][k] * V[j][i];
      }
      H[k + 1][k] = two_norm(w);
      const bool breakdown = !(H[k + 1][k] > 0.0);
      if (!breakdown) {
        for (std::size_t i = 0; i < n; ++i) V[k + 1][i] = w[i] / H[k + 1][k];
      }
      for (std::size_t j = 0; j < k; ++j) {
        const double t = cs[j] * H[j][k] + sn[j] * H[j + 1][k];
        H[j + 1][k] = -sn[j] * H[j][k] + cs[j] * H[j + 1][k];
        H[j][k] = t;
      }
      const double denom = std::hypot(H[k][k], H[k + 1][k]);
      if (denom == 0.0) break;
      cs[k] = H[k][k] / denom;
      sn[k] = H[k + 1][k] / denom;
      H[k][k] = denom;
      H[k + 1][k] = 0.0;
      g[k + 1] = -sn[k] * g[k];
      g[k] = cs[k] * g[k];
      ++out.iterations;
      if (std::abs(g[k + 1]) <= tol || breakdown) {
        ++k;
        break;
      }
    }
    // Back substitution for the k x k triangular system.
    std::vector<double> y(k, 0.0);
    for (std::size_t i = k; i-- > 0;) {
      double s = g[i];
      for (std::size_t j = i + 1; j < k; ++j) s -= H[i][j] * y[j];
      y[i] = H[i][i] != 0.0 ? s / H[i][i] : 0.0;
    }
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t i = 0; i < n; ++i) out.x[i] += y[j] * V[j][i];
    }
    const std::vector<double> Ax = A(out.x);
    for (std::size_t i = 0; i < n; ++i) r[i] = b[i] - Ax[i];
    const double previous = beta;
    beta = two_norm(r);
    out.residual = beta;
    if (beta <= tol) {
      out.converged = true;
      return out;
    }
    if (!(beta < previous * (1.0 - 1e-3))) break;  // stagnation
  }
  return out;
}

EquilibriumResult refine_newton(const Model& model, std::span<const double> u0, double tol,
                                const PotentialTable* table) {
  require_same_size(model.grid(), u0);
  if (!(tol > 0.0)) throw Error(ErrorKind::validation, "tolerance must be positive");
  std::vector<double> u(u0.begin(), u0.end());
  std::vector<double> r = rhs(model, u);
  double residual = sup_norm(r);
  if (!(residual < kNewtonStartResidual)) {
    throw Error(ErrorKind::refine_failure,
                "Newton start residual " + format_double(residual) + " is not below 0.1");
  }
  std::vector<double> history{residual};
  std::size_t stalls = 0;
  for (std::size_t it = 0; it < kNewtonMaxIterations; ++it) {
    if (residual <= tol) return finish(model, std::move(u), it, std::move(history), table);
    for (double& x : r) x = -x;
    const LinearOperator J = [&](std::span<const double> v) {
      return jacobian_vector(model, u, v);
    };
    const GmresResult lin = gmres(J, r, tol / 10.0);
    if (!lin.converged) {
      throw NonConvergenceError(ErrorKind::refine_failure, residual, it,
                                "Krylov solve stagnated at " + format_double(lin.residual));
    }
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += lin.x[i];
    r = rhs(model, u);
    const double next = sup_norm(r);
    history.push_back(next);
    if (!std::isfinite(next)) {
      throw NonConvergenceError(ErrorKind::refine_failure, next, it + 1, "Newton step diverged");
    }
    stalls = next < residual ? 0 : stalls + 1;
    residual = next;
    if (stalls >= 3 && residual > tol) {
      throw NonConvergenceError(ErrorKind::refine_failure, residual, it + 1,
                                "Newton residual stopped decreasing");
    }
  }
  if (residual <= tol) {
    return finish(model, std::move(u), kNewtonMaxIterations, std::move(history), table);
  }
  throw NonConvergenceError(ErrorKind::refine_failure, residual, kNewtonMaxIterations,
                            "Newton iteration limit reached");
}

}  // namespace nonlocal
