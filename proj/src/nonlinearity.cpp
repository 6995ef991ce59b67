#include "nonlocal/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "nonlocal/error.hpp"
#include "nonlocal/io_format.hpp"

namespace nonlocal {

double LinearBound::at(double x) const noexcept { return slope * std::abs(x) + offset; }

Nonlinearity Nonlinearity::identity() {
  Nonlinearity n;
  n.family_ = NonlinearityFamily::identity;
  n.growth_ = {1.0, 0.0};
  n.deriv_growth_ = {0.0, 1.0};
  return n;
}

Nonlinearity Nonlinearity::tanh() {
  Nonlinearity n;
  n.family_ = NonlinearityFamily::tanh;
  n.growth_ = {0.0, 1.0};
  n.deriv_growth_ = {0.0, 1.0};
  n.range_bound_ = 1.0;
  return n;
}

Nonlinearity Nonlinearity::scaled_tanh(double rho, double tau) {
  if (!(rho > 0.0) || !(tau > 0.0)) {
    throw Error(ErrorKind::validation, "scaled_tanh needs rho > 0 and tau > 0");
  }
  Nonlinearity n;
  n.family_ = NonlinearityFamily::scaled_tanh;
  n.params_ = {{"rho", rho}, {"tau", tau}};
  n.a_ = rho;
  n.b_ = tau;
  n.growth_ = {0.0, rho};
  n.deriv_growth_ = {0.0, rho / tau};
  n.range_bound_ = rho;
  return n;
}

Nonlinearity Nonlinearity::ramp(double s, double blend) {
  if (!(s > 0.0) || !(blend > 0.0) || blend > s) {
    throw Error(ErrorKind::validation, "ramp needs s > 0 and 0 < blend <= s");
  }
  Nonlinearity n;
  n.family_ = NonlinearityFamily::ramp;
  n.params_ = {{"s", s}, {"blend", blend}};
  n.a_ = s;
  n.b_ = blend;
  n.growth_ = {0.0, s};
  n.deriv_growth_ = {0.0, 1.0};
  // Flat beyond s + blend: non-decreasing, but only invertible on the bracket.
  n.monotone_ = false;
  return n;
}

Nonlinearity Nonlinearity::linear(double a, double b) {
  Nonlinearity n;
  n.family_ = NonlinearityFamily::linear;
  n.params_ = {{"a", a}, {"b", b}};
  n.a_ = a;
  n.b_ = b;
  n.growth_ = {std::abs(a), std::abs(b)};
  n.deriv_growth_ = {0.0, std::abs(a)};
  n.monotone_ = a > 0.0;
  n.nondecreasing_ = a >= 0.0;
  return n;
}

Nonlinearity Nonlinearity::from_config(const std::string& family, const ParamMap& params) {
  auto take = [&](const std::set<std::string>& allowed) {
    for (const auto& [key, value] : params) {
      if (!allowed.count(key)) {
        throw Error(ErrorKind::validation,
                    "nonlinearity '" + family + "' has no parameter '" + key + "'");
      }
    }
  };
  auto get = [&](const std::string& key, double fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  };
  if (family == "identity") {
    take({});
    return identity();
  }
  if (family == "tanh") {
    take({});
    return tanh();
  }
  if (family == "scaled_tanh") {
    take({"rho", "tau"});
    return scaled_tanh(get("rho", 1.0), get("tau", 1.0));
  }
  if (family == "ramp") {
    take({"s", "blend"});
    const double s = get("s", 1.0);
    return ramp(s, get("blend", 0.25 * s));
  }
  if (family == "linear") {
    take({"a", "b"});
    return linear(get("a", 1.0), get("b", 0.0));
  }
  throw Error(ErrorKind::validation, "unknown nonlinearity family '" + family + "'");
}

std::string Nonlinearity::name() const {
  switch (family_) {
    case NonlinearityFamily::identity: return "identity";
    case NonlinearityFamily::tanh: return "tanh";
    case NonlinearityFamily::scaled_tanh: return "scaled_tanh";
    case NonlinearityFamily::ramp: return "ramp";
    case NonlinearityFamily::linear: return "linear";
  }
  return "unknown";
}

namespace {

// Ramp on x >= 0; odd extension handles x < 0. t in [0, 1] across the blend
// window [s - b, s + b], with phi' = 1 - 3t^2 + 2t^3.
double ramp_positive(double x, double s, double b) {
  if (x <= s - b) return x;
  if (x >= s + b) return s;
  const double t = (x - (s - b)) / (2.0 * b);
  return (s - b) + 2.0 * b * (t - t * t * t + 0.5 * t * t * t * t);
}

double ramp_deriv_positive(double x, double s, double b) {
  if (x <= s - b) return 1.0;
  if (x >= s + b) return 0.0;
  const double t = (x - (s - b)) / (2.0 * b);
  return 1.0 - 3.0 * t * t + 2.0 * t * t * t;
}

}  // namespace

double Nonlinearity::eval(double x) const {
  switch (family_) {
    case NonlinearityFamily::identity: return x;
    case NonlinearityFamily::tanh: return std::tanh(x);
    case NonlinearityFamily::scaled_tanh: return a_ * std::tanh(x / b_);
    case NonlinearityFamily::ramp: return std::copysign(ramp_positive(std::abs(x), a_, b_), x);
    case NonlinearityFamily::linear: return a_ * x + b_;
  }
  return 0.0;
}

double Nonlinearity::deriv(double x) const {
  switch (family_) {
    case NonlinearityFamily::identity: return 1.0;
    case NonlinearityFamily::tanh: {
      const double c = std::cosh(x);
      return 1.0 / (c * c);
    }
    case NonlinearityFamily::scaled_tanh: {
      const double c = std::cosh(x / b_);
      return a_ / (b_ * c * c);
    }
    case NonlinearityFamily::ramp: return ramp_deriv_positive(std::abs(x), a_, b_);
    case NonlinearityFamily::linear: return a_;
  }
  return 0.0;
}

Interval Nonlinearity::inverse_bracket() const {
  switch (family_) {
    case NonlinearityFamily::ramp: return {-(a_ + b_), a_ + b_};
    default: return {-1e6, 1e6};
  }
}

double Nonlinearity::inverse(double y) const {
  auto out_of_range = [&] {
    return Error(ErrorKind::out_of_range,
                 name() + " does not attain " + format_double(y));
  };
  switch (family_) {
    case NonlinearityFamily::identity: return y;
    case NonlinearityFamily::tanh:
      if (!(std::abs(y) < 1.0)) throw out_of_range();
      return std::atanh(y);
    case NonlinearityFamily::scaled_tanh:
      if (!(std::abs(y) < a_)) throw out_of_range();
      return b_ * std::atanh(y / a_);
    case NonlinearityFamily::ramp: return numeric_inverse(*this, y, inverse_bracket());
    case NonlinearityFamily::linear:
      if (a_ == 0.0) throw Error(ErrorKind::out_of_range, "constant map is not invertible");
      return (y - b_) / a_;
  }
  throw out_of_range();
}

Nonlinearity Nonlinearity::with_growth(LinearBound growth) const {
  Nonlinearity copy = *this;
  copy.growth_ = growth;
  return copy;
}

Nonlinearity Nonlinearity::with_deriv_growth(LinearBound deriv_growth) const {
  Nonlinearity copy = *this;
  copy.deriv_growth_ = deriv_growth;
  return copy;
}

namespace {

double sample_point(Interval range, std::size_t k, std::size_t n) {
  if (k + 1 == n) return range.hi;
  return range.lo + range.length() * static_cast<double>(k) / static_cast<double>(n - 1);
}

}  // namespace

GrowthReport check_growth(const Nonlinearity& phi, Interval range, std::size_t n_samples) {
  if (n_samples < 100) {
    throw Error(ErrorKind::validation, "check_growth needs at least 100 samples");
  }
  GrowthReport report;
  report.samples = n_samples;
  // Relative slack so equality cases (identity, |x| = x) do not fail on rounding.
  constexpr double kRel = 1e-14;
  for (std::size_t k = 0; k < n_samples; ++k) {
    const double x = sample_point(range, k, n_samples);
    const double bound = phi.growth().at(x);
    const double dbound = phi.deriv_growth().at(x);
    const double vs = bound - std::abs(phi.eval(x));
    const double ds = dbound - std::abs(phi.deriv(x));
    report.worst_value_slack = std::min(report.worst_value_slack, vs);
    report.worst_deriv_slack = std::min(report.worst_deriv_slack, ds);
    const bool ok = vs >= -kRel * (1.0 + bound) && ds >= -kRel * (1.0 + dbound);
    if (!ok && !report.first_failure) report.first_failure = x;
  }
  report.pass = !report.first_failure.has_value();
  return report;
}

double lipschitz_on_interval(const Nonlinearity& phi, Interval interval) {
  double m = 0.0;
  for (std::size_t k = 0; k < kLipschitzSamples; ++k) {
    m = std::max(m, std::abs(phi.deriv(sample_point(interval, k, kLipschitzSamples))));
  }
  return kLipschitzSafety * m;
}

double numeric_inverse(const Nonlinearity& phi, double y, Interval bracket) {
  double lo = bracket.lo;
  double hi = bracket.hi;
  const double flo = phi.eval(lo);
  const double fhi = phi.eval(hi);
  if (!(flo < y && y < fhi)) {
    throw Error(ErrorKind::out_of_range, format_double(y) + " is outside (" +
                                             format_double(flo) + ", " + format_double(fhi) +
                                             ")");
  }
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = phi.eval(mid);
    if (fm == y) return mid;
    if (fm < y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace nonlocal
