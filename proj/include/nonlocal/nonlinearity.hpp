#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "nonlocal/grid.hpp"

namespace nonlocal {

/// |phi(x)| <= slope * |x| + offset
struct LinearBound {
  double slope = 0.0;
  double offset = 0.0;

  double at(double x) const noexcept;
  friend bool operator==(const LinearBound&, const LinearBound&) = default;
};

enum class NonlinearityFamily { identity, tanh, scaled_tanh, ramp, linear };

using ParamMap = std::map<std::string, double>;

/// A scalar response function (f or g) together with the growth metadata the
/// well-posedness, dissipativity and comparison results are stated in.
///
/// Metadata is declared per family and checked by sampling, never inferred.
class Nonlinearity {
 public:
  static Nonlinearity identity();
  static Nonlinearity tanh();
  /// rho * tanh(x / tau)
  static Nonlinearity scaled_tanh(double rho, double tau);
  /// Clamp to [-s, s] with a C^2 blend of half-width `blend` around +-s.
  static Nonlinearity ramp(double s, double blend);
  /// a * x + b
  static Nonlinearity linear(double a, double b);

  /// Builds from a family key and parameter map; unknown keys or parameters
  /// raise a validation error.
  static Nonlinearity from_config(const std::string& family, const ParamMap& params);

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;
  double deriv(double x) const;

  /// Exact inverse where the family has one, otherwise bisection on
  /// inverse_bracket(). Throws out_of_range when y is not attained.
  double inverse(double y) const;
  bool invertible() const noexcept { return monotone_; }
  Interval inverse_bracket() const;

  NonlinearityFamily family() const noexcept { return family_; }
  std::string name() const;
  const ParamMap& params() const noexcept { return params_; }

  const LinearBound& growth() const noexcept { return growth_; }
  const LinearBound& deriv_growth() const noexcept { return deriv_growth_; }
  /// Strictly increasing on the whole line (within inverse_bracket()).
  bool monotone() const noexcept { return monotone_; }
  /// Non-decreasing; what the comparison principle needs.
  bool nondecreasing() const noexcept { return nondecreasing_; }
  /// rho with |phi(x)| < rho for all x, when the family is bounded.
  const std::optional<double>& range_bound() const noexcept { return range_bound_; }

  /// Copy with different declared growth constants.
  Nonlinearity with_growth(LinearBound growth) const;
  Nonlinearity with_deriv_growth(LinearBound deriv_growth) const;

  friend bool operator==(const Nonlinearity&, const Nonlinearity&) = default;

 private:
  NonlinearityFamily family_ = NonlinearityFamily::identity;
  ParamMap params_;
  double a_ = 1.0;  // slope / rho / s
  double b_ = 0.0;  // offset / tau / blend
  LinearBound growth_;
  LinearBound deriv_growth_;
  bool monotone_ = true;
  bool nondecreasing_ = true;
  std::optional<double> range_bound_;
};

struct GrowthReport {
  bool pass = true;
  std::size_t samples = 0;
  double worst_value_slack = kInfinity;  // min of bound - |phi(x)|
  double worst_deriv_slack = kInfinity;  // min of bound' - |phi'(x)|
  std::optional<double> first_failure;   // smallest sampled x that violates
};

/// Checks the declared value and derivative growth bounds on n_samples uniform
/// points over `range` (endpoints included).
GrowthReport check_growth(const Nonlinearity& phi, Interval range, std::size_t n_samples);

inline constexpr std::size_t kLipschitzSamples = 10000;
inline constexpr double kLipschitzSafety = 1.01;

/// 1.01 * max |phi'| over a 10^4-point uniform sample of the interval.
double lipschitz_on_interval(const Nonlinearity& phi, Interval interval);

/// Bisection for phi(x) = y on a bracket where phi is strictly increasing.
double numeric_inverse(const Nonlinearity& phi, double y, Interval bracket);

}  // namespace nonlocal
