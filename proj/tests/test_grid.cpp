#include <gtest/gtest.h>

#include <cmath>

#include "nonlocal/error.hpp"
#include "nonlocal/grid.hpp"
#include "oracles.hpp"

using namespace nonlocal;

TEST(Grid, ThreeNodeTrapezoid) {
  const DomainGrid g = build_grid(1, {{0.0, 1.0}}, {3});
  ASSERT_EQ(g.size(), 3u);
  EXPECT_DOUBLE_EQ(g.node(0)[0], 0.0);
  EXPECT_DOUBLE_EQ(g.node(1)[0], 0.5);
  EXPECT_DOUBLE_EQ(g.node(2)[0], 1.0);
  EXPECT_DOUBLE_EQ(g.weights()[0], 0.25);
  EXPECT_DOUBLE_EQ(g.weights()[1], 0.5);
  EXPECT_DOUBLE_EQ(g.weights()[2], 0.25);
}

TEST(Grid, WeightsSumToMeasure) {
  for (std::size_t n : {2u, 3u, 17u, 100u, 513u}) {
    const DomainGrid g = build_grid(1, {{-1.0, 1.0}}, {n});
    EXPECT_NEAR(integrate_field(g, std::vector<double>(n, 1.0)), 2.0, 1e-14) << n;
    EXPECT_DOUBLE_EQ(g.measure(), 2.0);
  }
}

TEST(Grid, TensorProduct) {
  const DomainGrid g = build_grid(2, {{0.0, 1.0}, {0.0, 2.0}}, {33, 65});
  EXPECT_EQ(g.size(), 33u * 65u);
  EXPECT_DOUBLE_EQ(g.measure(), 2.0);
  EXPECT_NEAR(integrate_field(g, std::vector<double>(g.size(), 1.0)), 2.0, 1e-12);
  // x varies slowest.
  EXPECT_DOUBLE_EQ(g.node(1)[0], 0.0);
  EXPECT_DOUBLE_EQ(g.node(65)[0], 1.0 / 32.0);
  EXPECT_DOUBLE_EQ(g.node(g.size() - 1)[1], 2.0);
}

TEST(Grid, WeightsMatchOracle) {
  const DomainGrid g = build_grid(1, {{-0.5, 2.0}}, {41});
  const auto w = oracle::trapezoid_weights(-0.5, 2.0, 41);
  for (std::size_t i = 0; i < w.size(); ++i) EXPECT_NEAR(g.weights()[i], w[i], 1e-15);
}

TEST(Grid, Errors) {
  EXPECT_THROW(build_grid(3, {{0, 1}, {0, 1}, {0, 1}}, {3, 3, 3}), Error);
  EXPECT_THROW(build_grid(1, {{1.0, 1.0}}, {3}), Error);
  EXPECT_THROW(build_grid(1, {{0.0, 1.0}}, {1}), Error);
  EXPECT_THROW(build_grid(2, {{0.0, 1.0}}, {3, 3}), Error);
  try {
    build_grid(1, {{2.0, 1.0}}, {3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::degenerate_domain);
  }
}

TEST(LpNorm, ConstantField) {
  const DomainGrid g = build_grid(1, {{0.0, 1.0}}, {101});
  EXPECT_NEAR(lp_norm(g, std::vector<double>(101, 1.0), 2.0), 1.0, 1e-14);
  const DomainGrid g2 = build_grid(1, {{0.0, 3.0}}, {101});
  const std::vector<double> c(101, 2.5);
  for (double p : {1.0, 1.5, 2.0, 3.0, 7.0}) {
    EXPECT_NEAR(lp_norm(g2, c, p), 2.5 * std::pow(3.0, 1.0 / p), 1e-13) << p;
  }
  EXPECT_DOUBLE_EQ(lp_norm(g2, c, kInfinity), 2.5);
}

TEST(LpNorm, LinearFieldQuadratureError) {
  double previous = 1.0;
  for (std::size_t n : {33u, 65u, 129u}) {
    const DomainGrid g = build_grid(1, {{0.0, 1.0}}, {n});
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = g.node(i)[0];
    const double err = std::abs(lp_norm(g, u, 2.0) - 1.0 / std::sqrt(3.0));
    EXPECT_LT(err, 1.0 / static_cast<double>(n * n));
    EXPECT_LT(err, previous);
    previous = err;
  }
}

TEST(LpNorm, ZeroIffZeroAndInvalidExponent) {
  const DomainGrid g = build_grid(1, {{0.0, 1.0}}, {11});
  std::vector<double> u(11, 0.0);
  EXPECT_EQ(lp_norm(g, u, 2.0), 0.0);
  u[4] = 1e-300;
  EXPECT_GT(lp_norm(g, u, 1.0), 0.0);
  EXPECT_THROW(lp_norm(g, u, 0.5), Error);
  EXPECT_THROW(lp_norm(g, u, std::nan("")), Error);
  EXPECT_THROW(lp_norm(g, std::vector<double>(5, 0.0), 2.0), Error);
}

TEST(IntegrateField, Examples) {
  const DomainGrid g = build_grid(1, {{-1.0, 1.0}}, {201});
  std::vector<double> x(201), x2(201);
  for (std::size_t i = 0; i < 201; ++i) {
    x[i] = g.node(i)[0];
    x2[i] = x[i] * x[i];
  }
  EXPECT_NEAR(integrate_field(g, x), 0.0, 1e-14);
  const DomainGrid unit = build_grid(1, {{0.0, 1.0}}, {201});
  std::vector<double> y2(201);
  for (std::size_t i = 0; i < 201; ++i) y2[i] = unit.node(i)[0] * unit.node(i)[0];
  EXPECT_NEAR(integrate_field(unit, y2), 1.0 / 3.0, 1.0 / (200.0 * 200.0));
}

TEST(LpNorm, Properties) {
  const DomainGrid g = build_grid(1, {{0.0, 1.0}}, {64});
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto u = oracle::random_field(64, seed, -3.0, 3.0);
    const auto v = oracle::random_field(64, seed + 1000, -3.0, 3.0);
    // Monotone in p on a unit-measure domain.
    const double ps[] = {1.0, 1.5, 2.0, 4.0, 10.0, kInfinity};
    for (int k = 0; k + 1 < 6; ++k) {
      EXPECT_LE(lp_norm(g, u, ps[k]), lp_norm(g, u, ps[k + 1]) + 1e-12);
    }
    std::vector<double> sum(64);
    for (std::size_t i = 0; i < 64; ++i) sum[i] = u[i] + v[i];
    for (double p : {1.0, 2.0, 3.0, kInfinity}) {
      EXPECT_LE(lp_norm(g, sum, p), lp_norm(g, u, p) + lp_norm(g, v, p) + 1e-12);
    }
    EXPECT_LE(integrate_field(g, u), lp_norm(g, u, 1.0));
    std::vector<double> a(64);
    for (std::size_t i = 0; i < 64; ++i) a[i] = std::abs(u[i]);
    EXPECT_NEAR(integrate_field(g, a), lp_norm(g, a, 1.0), 1e-14);
  }
}

TEST(ConjugateExponent, Pairs) {
  EXPECT_EQ(conjugate_exponent(1.0), kInfinity);
  EXPECT_EQ(conjugate_exponent(kInfinity), 1.0);
  EXPECT_DOUBLE_EQ(conjugate_exponent(2.0), 2.0);
  EXPECT_DOUBLE_EQ(conjugate_exponent(4.0), 4.0 / 3.0);
}
