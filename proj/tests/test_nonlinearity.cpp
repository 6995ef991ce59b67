#include <gtest/gtest.h>

#include <cmath>

#include "nonlocal/error.hpp"
#include "nonlocal/nonlinearity.hpp"
#include "oracles.hpp"

using namespace nonlocal;

namespace {

std::vector<Nonlinearity> library() {
  return {Nonlinearity::identity(), Nonlinearity::tanh(), Nonlinearity::scaled_tanh(2.0, 0.5),
          Nonlinearity::ramp(1.0, 0.25), Nonlinearity::linear(0.5, 0.2)};
}

}  // namespace

TEST(Nonlinearity, GrowthExamples) {
  EXPECT_TRUE(check_growth(Nonlinearity::tanh(), {-100.0, 100.0}, 1000).pass);
  const GrowthReport id = check_growth(Nonlinearity::identity(), {-10.0, 10.0}, 101);
  EXPECT_TRUE(id.pass);
  EXPECT_NEAR(id.worst_value_slack, 0.0, 1e-12);
  const GrowthReport bad =
      check_growth(Nonlinearity::tanh().with_growth({0.0, 0.5}), {-4.0, 4.0}, 801);
  EXPECT_FALSE(bad.pass);
  ASSERT_TRUE(bad.first_failure.has_value());
  EXPECT_GT(std::tanh(std::abs(*bad.first_failure)), 0.5);
  EXPECT_THROW(check_growth(Nonlinearity::tanh(), {-1.0, 1.0}, 50), Error);
}

TEST(Nonlinearity, LibraryPassesDeclaredGrowth) {
  for (const auto& phi : library()) {
    EXPECT_TRUE(check_growth(phi, {-1000.0, 1000.0}, 20001).pass) << phi.name();
  }
}

TEST(Nonlinearity, LipschitzExamples) {
  EXPECT_DOUBLE_EQ(lipschitz_on_interval(Nonlinearity::identity(), {-3.0, 5.0}), 1.01);
  EXPECT_NEAR(lipschitz_on_interval(Nonlinearity::tanh(), {-10.0, 10.0}), 1.01, 1e-5);
  // Sample-max oracle on the blended derivative.
  const Nonlinearity ramp = Nonlinearity::ramp(1.0, 0.25);
  double oracle_max = 0.0;
  for (int k = 0; k <= 100000; ++k) {
    oracle_max = std::max(oracle_max, std::abs(ramp.deriv(-2.0 + 4.0 * k / 100000.0)));
  }
  EXPECT_NEAR(lipschitz_on_interval(ramp, {-2.0, 2.0}), 1.01 * oracle_max, 1e-9);
  EXPECT_NEAR(oracle_max, 1.0, 1e-12);
}

TEST(Nonlinearity, DerivativeMatchesFiniteDifferences) {
  for (const auto& phi : library()) {
    const auto xs = oracle::random_field(100, 11, -3.0, 3.0);
    for (double x : xs) {
      if (phi.family() == NonlinearityFamily::ramp && std::abs(std::abs(x) - 1.25) < 1e-3) continue;
      const double h = 1e-6;
      const double fd = (phi.eval(x + h) - phi.eval(x - h)) / (2 * h);
      const double d = phi.deriv(x);
      EXPECT_LE(std::abs(fd - d), 1e-6 * std::max(1.0, std::abs(d))) << phi.name() << " " << x;
    }
  }
}

TEST(Nonlinearity, InverseRoundTrip) {
  EXPECT_EQ(Nonlinearity::tanh().inverse(0.0), 0.0);
  EXPECT_NEAR(Nonlinearity::tanh().inverse(std::tanh(0.7)), 0.7, 1e-12);
  for (const auto& phi : library()) {
    if (!phi.invertible() && phi.family() != NonlinearityFamily::ramp) continue;
    const Interval b = phi.inverse_bracket();
    const double lo = std::max(b.lo, -5.0) * 0.999;
    const double hi = std::min(b.hi, 5.0) * 0.999;
    for (double x : oracle::random_field(100, 5, lo, hi)) {
      // Round-off in y is amplified by 1 / phi'(x).
      const double cond = std::abs(phi.eval(x)) / std::max(std::abs(phi.deriv(x)), 1e-300);
      EXPECT_NEAR(phi.inverse(phi.eval(x)), x, 1e-10 + 1e-15 * cond) << phi.name();
    }
  }
  EXPECT_THROW(Nonlinearity::tanh().inverse(1.0), Error);
  EXPECT_THROW(Nonlinearity::scaled_tanh(2.0, 1.0).inverse(-2.5), Error);
}

TEST(Nonlinearity, NumericInverseOnRampBlend) {
  const Nonlinearity ramp = Nonlinearity::ramp(0.2, 0.15);  // 0.15 lies in the blend zone
  const double x = numeric_inverse(ramp, 0.15, ramp.inverse_bracket());
  EXPECT_GT(x, 0.05);
  EXPECT_NEAR(ramp.eval(x), 0.15, 1e-12);
  // Grid scan then local bisection as the oracle.
  double best = 0.0;
  double best_gap = 1.0;
  for (int k = 0; k <= 100000; ++k) {
    const double t = 0.35 * k / 100000.0;
    if (std::abs(ramp.eval(t) - 0.15) < best_gap) {
      best_gap = std::abs(ramp.eval(t) - 0.15);
      best = t;
    }
  }
  const double root = oracle::bisect([&](double t) { return ramp.eval(t) - 0.15; }, best - 1e-5,
                                     best + 1e-5);
  EXPECT_NEAR(x, root, 1e-10);
  EXPECT_THROW(numeric_inverse(ramp, 0.25, ramp.inverse_bracket()), Error);
  EXPECT_NEAR(numeric_inverse(Nonlinearity::tanh(), 0.0, {-5.0, 5.0}), 0.0, 1e-12);
}

TEST(Nonlinearity, Metadata) {
  EXPECT_EQ(*Nonlinearity::tanh().range_bound(), 1.0);
  EXPECT_EQ(*Nonlinearity::scaled_tanh(3.0, 2.0).range_bound(), 3.0);
  EXPECT_FALSE(Nonlinearity::identity().range_bound());
  EXPECT_TRUE(Nonlinearity::ramp(1.0, 0.2).nondecreasing());
  EXPECT_FALSE(Nonlinearity::ramp(1.0, 0.2).monotone());
  EXPECT_FALSE(Nonlinearity::linear(-1.0, 0.0).nondecreasing());
  const Nonlinearity g = Nonlinearity::scaled_tanh(2.0, 0.5);
  for (double x : oracle::random_field(200, 9, -8, 8)) {
    EXPECT_LT(std::abs(g.eval(x)), 2.0);
    EXPECT_GT(g.deriv(x * 0.01), 0.0);
  }
}

TEST(Nonlinearity, FromConfig) {
  EXPECT_EQ(Nonlinearity::from_config("scaled_tanh", {{"rho", 2.0}, {"tau", 0.5}}),
            Nonlinearity::scaled_tanh(2.0, 0.5));
  EXPECT_EQ(Nonlinearity::from_config("ramp", {{"s", 2.0}}), Nonlinearity::ramp(2.0, 0.5));
  EXPECT_THROW(Nonlinearity::from_config("tanh", {{"rho", 1.0}}), Error);
  EXPECT_THROW(Nonlinearity::from_config("sigmoid", {}), Error);
  EXPECT_THROW(Nonlinearity::scaled_tanh(-1.0, 1.0), Error);
}
