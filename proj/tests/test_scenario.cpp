#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "nonlocal/error.hpp"
#include "nonlocal/expression.hpp"
#include "nonlocal/scenario.hpp"

using namespace nonlocal;

namespace {

ErrorKind kind_of(const std::string& text) {
  try {
    parse_scenario_text(text);
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return ErrorKind::io;
}

std::string message_of(const std::string& text) {
  try {
    parse_scenario_text(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Scenario, Defaults) {
  const Scenario s = parse_scenario_text("[model]\n");
  EXPECT_EQ(s, Scenario{});
  EXPECT_EQ(s.model.resolution, std::vector<std::size_t>{129});
  EXPECT_EQ(s.analysis.p, 2.0);
  EXPECT_EQ(s.analysis.sigma, 1.0);
  EXPECT_TRUE(s.wants_format("csv"));
  EXPECT_FALSE(s.wants("lyapunov"));
}

TEST(Scenario, FullFile) {
  const Scenario s = parse_scenario_text(R"(
# comment
[model]
dim = 2
bounds = 0 1 -1 1
resolution = 9 11
beta = 2.5
h = 0.1
[kernel]
family = tophat
radius = 0.3
[f]
family = ramp
s = 2
blend = 0.1
[g]
family = scaled_tanh
rho = 0.8
tau = 1.5
[run]
t_end = 2
dt = 0.05
scheme = rk4
initial = expression
expression = sin(pi*x) * y
[analysis]
suites = boundK comparison
p = 3
[output]
directory = out
formats = csv
stride = 4
)");
  EXPECT_EQ(s.model.dim, 2);
  EXPECT_EQ(s.model.bounds[1].hi, 1.0);
  EXPECT_EQ(s.model.resolution[1], 11u);
  EXPECT_EQ(s.kernel.family, KernelFamily::tophat);
  EXPECT_EQ(s.f.params.at("blend"), 0.1);
  EXPECT_EQ(s.run.scheme, Scheme::rk4);
  EXPECT_TRUE(s.wants("comparison"));
  EXPECT_FALSE(s.wants_format("json"));
  EXPECT_EQ(s.output.stride, 4u);

  const Model m = build_model(s);
  EXPECT_EQ(m.size(), 99u);
  const auto u0 = initial_condition(s, m.grid());
  const auto x = m.grid().node(50);
  EXPECT_NEAR(u0[50], std::sin(std::numbers::pi * x[0]) * x[1], 1e-15);
}

TEST(Scenario, RoundTrip) {
  Scenario s;
  s.model.beta = 1.0 / 3.0;
  s.model.h = 0.0123456789012345;
  s.kernel.width = 0.07;
  s.run.initial = InitialKind::random;
  s.run.seed = 18446744073709551615ull;
  s.analysis.suites = {"lyapunov", "boundK"};
  s.g = {"scaled_tanh", {{"rho", 0.9}, {"tau", 2.0}}};
  const std::string text = emit_scenario(s);
  EXPECT_EQ(parse_scenario_text(text), s);
  EXPECT_EQ(emit_scenario(parse_scenario_text(text)), text);
}

TEST(Scenario, UnknownNamesAreReported) {
  EXPECT_EQ(kind_of("[model]\nbta = 2\n"), ErrorKind::parse);
  EXPECT_NE(message_of("[model]\nbta = 2\n").find("bta"), std::string::npos);
  EXPECT_NE(message_of("[model]\n[solver]\nx = 1\n").find("solver"), std::string::npos);
  EXPECT_EQ(kind_of("[run]\nt_end = 1\n"), ErrorKind::validation);  // no [model]
  EXPECT_EQ(kind_of("[model]\nbeta = two\n"), ErrorKind::parse);
}

TEST(Scenario, ValidationErrors) {
  EXPECT_EQ(kind_of("[model]\nresolution = 1\n"), ErrorKind::validation);
  EXPECT_EQ(kind_of("[model]\n[run]\ndt = 0\n"), ErrorKind::validation);
  EXPECT_EQ(kind_of("[model]\n[run]\ninitial = random\n"), ErrorKind::validation);
  EXPECT_EQ(kind_of("[model]\n[analysis]\nsuites = everything\n"), ErrorKind::validation);
  EXPECT_EQ(kind_of("[model]\n[analysis]\np = 0.5\n"), ErrorKind::validation);
  EXPECT_EQ(kind_of("[model]\n[g]\nfamily = identity\n[analysis]\nsuites = lyapunov\n"),
            ErrorKind::validation);
  EXPECT_NE(message_of("[model]\n[g]\nfamily = identity\n[analysis]\nsuites = lyapunov\n")
                .find("|g| < rho"),
            std::string::npos);
}

TEST(Scenario, RandomInitialIsDeterministic) {
  const Scenario s = parse_scenario_text(
      "[model]\nresolution = 64\n[run]\ninitial = random\nseed = 7\namplitude = 0.5\noffset = 1\n");
  const auto grid = build_grid(1, {{0, 1}}, {64});
  const auto a = initial_condition(s, grid);
  EXPECT_EQ(a, initial_condition(s, grid));
  for (double v : a) {
    EXPECT_GE(v, 0.5);
    EXPECT_LT(v, 1.5);
  }
}

TEST(Expression, Evaluates) {
  EXPECT_DOUBLE_EQ(Expression::parse("1 + 2*3")(0), 7.0);
  EXPECT_DOUBLE_EQ(Expression::parse("-2^2")(0), -4.0);
  EXPECT_DOUBLE_EQ(Expression::parse("2^3^2")(0), 512.0);
  EXPECT_DOUBLE_EQ(Expression::parse("(x - 1) / y")(3, 4), 0.5);
  EXPECT_DOUBLE_EQ(Expression::parse("exp(log(x)) + abs(-y)")(2, 3), 5.0);
  EXPECT_NEAR(Expression::parse("cos(pi) + e")(0), std::numbers::e - 1.0, 1e-15);
}

TEST(Expression, ParseErrors) {
  for (const char* bad : {"", "1 +", "foo(1)", "(x", "x y", "2 ** 3", "sin x"}) {
    try {
      Expression::parse(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::parse) << bad;
    }
  }
}
