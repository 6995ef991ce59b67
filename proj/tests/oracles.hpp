#pragma once

// Reference computations written independently of the library: naive loops,
// closed forms and scalar root finding. Tests compare library output to these.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

// Trapezoid weights on n uniform nodes of [lo, hi].
inline std::vector<double> trapezoid_weights(double lo, double hi, std::size_t n) {
  const double step = (hi - lo) / static_cast<double>(n - 1);
  std::vector<double> w(n, step);
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

inline std::vector<double> uniform_nodes(double lo, double hi, std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return x;
}

inline double gaussian_1d(double d, double sigma) {
  return std::exp(-d * d / (2.0 * sigma * sigma)) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

// Mass of a centred 1D gaussian of width sigma over [lo, hi].
inline double gaussian_mass(double centre, double sigma, double lo, double hi) {
  const double s = sigma * std::sqrt(2.0);
  return 0.5 * (std::erf((hi - centre) / s) - std::erf((lo - centre) / s));
}

// (Kv)_i = sum_j w_j J(x_i, x_j) v_j + exterior * (1 - sum_j w_j J(x_i, x_j))_+ by plain loops.
inline std::vector<double> dense_apply(const std::vector<double>& x, const std::vector<double>& w,
                                       const std::function<double(double, double)>& J,
                                       const std::vector<double>& v, double exterior) {
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double acc = 0.0;
    double mass = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) {
      acc += w[j] * J(x[i], x[j]) * v[j];
      mass += w[j] * J(x[i], x[j]);
    }
    out[i] = acc + exterior * std::max(0.0, 1.0 - mass);
  }
  return out;
}

// Root of phi on [lo, hi] with phi(lo) < 0 < phi(hi), by bisection to machine precision.
inline double bisect(const std::function<double(double)>& phi, double lo, double hi) {
  for (int it = 0; it < 300; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (phi(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// Largest root of m = tanh(beta (m + h)), h >= 0. On m > 0 the map
// m - tanh(beta (m + h)) is convex, so the positive root is unique.
inline double tanh_fixed_point(double beta, double h) {
  const auto phi = [&](double m) { return m - std::tanh(beta * (m + h)); };
  if (h == 0.0 && beta <= 1.0) return 0.0;
  const double lo = h > 0.0 ? 0.0 : 1e-9;  // phi < 0 just right of 0 when beta > 1
  return bisect(phi, lo, 1.0);
}

// theta for f = identity, g = tanh:
// -m^2/2 - h m + (m artanh m + ln(1 - m^2)/2) / beta.
inline double tanh_identity_theta(double m, double beta, double h) {
  return -0.5 * m * m - h * m + (m * std::atanh(m) + 0.5 * std::log1p(-m * m)) / beta;
}

// Least-squares slope of log(err) against log(dt).
inline double fitted_order(const std::vector<double>& dts, const std::vector<double>& errs) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(dts.size());
  for (std::size_t k = 0; k < dts.size(); ++k) {
    const double lx = std::log(dts[k]);
    const double ly = std::log(errs[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline std::vector<double> random_field(std::size_t n, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

inline double sup_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double sup_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace oracle
