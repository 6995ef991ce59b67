#include <gtest/gtest.h>

#include <cmath>

#include "nonlocal/equilibrium.hpp"
#include "nonlocal/error.hpp"
#include "oracles.hpp"

using namespace nonlocal;

namespace {

Model tanh_model(KernelSpec spec, std::size_t n, double beta, double h = 0.0) {
  return Model::make(build_kernel(spec, build_grid(1, {{0.0, 1.0}}, {n})),
                     Nonlinearity::identity(), Nonlinearity::tanh(), beta, h);
}

}  // namespace

TEST(FixedPoint, AlreadyAtEquilibrium) {
  const Model m = tanh_model(KernelSpec::uniform(), 17, 2.0);
  const std::vector<double> u(17, oracle::tanh_fixed_point(2.0, 0.0));
  const EquilibriumResult r = solve_equilibrium_fixed_point(m, u, 1.0, 1e-12, 10);
  EXPECT_LE(r.iterations, 2u);
  EXPECT_LE(r.residual, 1e-12);
}

TEST(FixedPoint, ConstantEquilibriaMatchScalarRoot) {
  for (double beta : {0.5, 2.0}) {
    for (double h : {0.0, 0.1}) {
      const Model m = tanh_model(KernelSpec::uniform(), 33, beta, h);
      const EquilibriumResult r =
          solve_equilibrium_fixed_point(m, std::vector<double>(33, 0.1), 1.0, 1e-13, 10000);
      const double root = oracle::tanh_fixed_point(beta, h);
      EXPECT_LE(r.residual, 1e-10);
      EXPECT_LE(r.dissipation, 1e-8);
      EXPECT_GE(r.dissipation, -1e-10);
      for (double v : r.state.values) EXPECT_NEAR(v, root, 1e-10) << beta << " " << h;
    }
  }
}

TEST(FixedPoint, ContractiveRegimeGoesToZero) {
  const Model m = tanh_model(KernelSpec::gaussian(0.1), 33, 0.5, 0.0);
  const EquilibriumResult r = solve_equilibrium_fixed_point(
      m, oracle::random_field(33, 2, -0.9, 0.9), 0.7, 1e-12, 10000);
  EXPECT_LE(oracle::sup_abs(r.state.values), 1e-11);
}

TEST(FixedPoint, Errors) {
  const Model m = tanh_model(KernelSpec::uniform(), 9, 2.0);
  const std::vector<double> u(9, 0.1);
  EXPECT_THROW(solve_equilibrium_fixed_point(m, u, 0.0, 1e-10, 10), Error);
  EXPECT_THROW(solve_equilibrium_fixed_point(m, u, 1.5, 1e-10, 10), Error);
  try {
    solve_equilibrium_fixed_point(m, u, 1.0, 1e-14, 3);
    FAIL();
  } catch (const NonConvergenceError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::non_convergence);
    EXPECT_GT(e.residual(), 0.0);
  }
}

TEST(FixedPoint, ReportsLyapunovWithTable) {
  const Model m = tanh_model(KernelSpec::uniform(), 17, 2.0);
  const PotentialTable t = PotentialTable::build(PotentialInputs::from_model(m));
  const EquilibriumResult r =
      solve_equilibrium_fixed_point(m, std::vector<double>(17, 0.2), 1.0, 1e-12, 1000, &t);
  EXPECT_NEAR(r.lyapunov, 0.0, 1e-12);
}

TEST(Gmres, SolvesSmallSystem) {
  // Diagonally dominant nonsymmetric matrix.
  const std::size_t n = 40;
  const LinearOperator A = [&](std::span<const double> x) {
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = 4.0 * x[i] + (i > 0 ? x[i - 1] : 0.0) - 0.5 * (i + 1 < n ? x[i + 1] : 0.0);
    }
    return y;
  };
  const auto b = oracle::random_field(n, 1, -1, 1);
  const GmresResult r = gmres(A, b, 1e-13);
  EXPECT_TRUE(r.converged);
  const auto Ax = A(r.x);
  EXPECT_LE(oracle::sup_diff(Ax, b), 1e-12);
}

TEST(Newton, ExactEquilibriumNeedsNoCorrection) {
  const Model m = tanh_model(KernelSpec::uniform(), 17, 2.0);
  const std::vector<double> u(17, 0.0);
  const EquilibriumResult r = refine_newton(m, u, 1e-12);
  EXPECT_EQ(r.iterations, 0u);
  EXPECT_EQ(r.state.values, u);
}

TEST(Newton, LinearModelInOneStep) {
  const Model m = Model::make(build_kernel(KernelSpec::gaussian(0.1), build_grid(1, {{0, 1}}, {33})),
                              Nonlinearity::identity(), Nonlinearity::linear(0.5, 0.2), 1.0, 0.1);
  const auto u0 = oracle::random_field(33, 4, -0.01, 0.01);
  std::vector<double> start(33, 0.0);
  for (std::size_t i = 0; i < 33; ++i) start[i] = 0.35 + u0[i];
  const EquilibriumResult r = refine_newton(m, start, 1e-13);
  EXPECT_EQ(r.iterations, 1u);
  EXPECT_LE(r.residual, 1e-13);
}

TEST(Newton, QuadraticConvergenceNearRoot) {
  const Model m = tanh_model(KernelSpec::gaussian(0.1), 48, 2.0, 0.0);
  const EquilibriumResult fp = solve_equilibrium_fixed_point(
      m, std::vector<double>(48, 0.5), 1.0, 1e-2, 1000);
  const EquilibriumResult r = refine_newton(m, fp.state.values, 1e-14);
  const auto& h = r.residual_history;
  ASSERT_GE(h.size(), 3u);
  // Each step at least squares the error (up to a constant) until round-off.
  for (std::size_t k = 1; k + 1 < h.size(); ++k) {
    if (h[k + 1] < 1e-13) break;
    EXPECT_LE(std::log(h[k + 1]), 1.7 * std::log(h[k]) + 3.0);
  }
  EXPECT_LE(r.residual, 1e-14);
}

TEST(Newton, RejectsFarStart) {
  const Model m = tanh_model(KernelSpec::uniform(), 9, 2.0);
  try {
    refine_newton(m, std::vector<double>(9, 0.5), 1e-12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::refine_failure);
  }
}

TEST(CriticalPoints, EquivalenceOnSolverOutputs) {
  const Model m = tanh_model(KernelSpec::gaussian(0.1), 40, 2.0, 0.05);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const EquilibriumResult r = solve_equilibrium_fixed_point(
        m, oracle::random_field(40, seed, -0.9, 0.9), 1.0, 1e-11, 100000);
    EXPECT_LE(r.residual, 1e-10);
    EXPECT_LE(std::abs(r.dissipation), 1e-8);
    // Perturbations: tiny dissipation forces tiny residual and vice versa.
    for (double eps : {1e-2, 1e-4}) {
      std::vector<double> u = r.state.values;
      const auto bump = oracle::random_field(40, seed + 9, -eps, eps);
      for (std::size_t i = 0; i < 40; ++i) u[i] += bump[i];
      const double I = dissipation_I(m, u);
      const double res = oracle::sup_abs(rhs(m, u));
      EXPECT_GT(I, 0.0);
      if (I <= 1e-12) EXPECT_LE(res, 1e-6);
    }
  }
}
