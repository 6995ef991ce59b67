#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nonlocal/dynamics.hpp"

namespace nonlocal {

inline constexpr double kAdmissibleMargin = 1e-6;  // delta = 1e-6 rho
inline constexpr std::size_t kPotentialGridPoints = 10001;
inline constexpr double kQuadratureTolerance = 1e-14;  // relative to the integral of |integrand|

/// Local potential
///   theta(m) = -f(m)^2/2 - h f(m) - i(m)/beta,  i(m) = -int_{s0}^{m} g^{-1}(s) f'(s) ds,
/// where s0 is the zero of f (0 when f has none in range).
struct PotentialInputs {
  Nonlinearity f;
  Nonlinearity g;
  double beta = 1.0;
  double h = 0.0;
  double rho = 1.0;

  static PotentialInputs from_model(const Model& model);
};

/// theta by adaptive Gauss-Kronrod quadrature over [s0, m]. |m| >= rho - delta
/// raises a domain error.
double potential_theta(const Nonlinearity& f, const Nonlinearity& g, double beta, double h,
                       double rho, double m);

/// d theta / dm = f'(m) (g^{-1}(m)/beta - f(m) - h).
double potential_theta_prime(const PotentialInputs& in, double m);

/// theta and i tabulated on 10^4 + 1 points of [-(rho - delta), rho - delta],
/// with the global minimiser located once and shared by every F evaluation.
class PotentialTable {
 public:
  static PotentialTable build(const PotentialInputs& inputs);

  const PotentialInputs& inputs() const noexcept { return inputs_; }
  double rho() const noexcept { return inputs_.rho; }
  double delta() const noexcept { return delta_; }
  double limit() const noexcept { return inputs_.rho - delta_; }
  double anchor() const noexcept { return anchor_; }
  const std::vector<double>& m_grid() const noexcept { return m_grid_; }
  const std::vector<double>& theta_values() const noexcept { return theta_values_; }
  const std::vector<double>& i_values() const noexcept { return i_values_; }
  double mbar() const noexcept { return mbar_; }
  double theta_mbar() const noexcept { return theta_mbar_; }

  /// From the nearest tabulated node plus a local quadrature.
  double theta(double m) const;
  double i(double m) const;

 private:
  PotentialInputs inputs_;
  double delta_ = 0.0;
  double anchor_ = 0.0;
  std::vector<double> m_grid_;
  std::vector<double> theta_values_;
  std::vector<double> i_values_;
  double mbar_ = 0.0;
  double theta_mbar_ = 0.0;
};

struct MbarResult {
  double mbar = 0.0;
  double theta_mbar = 0.0;
};

inline constexpr double kMbarTolerance = 1e-10;

/// Global minimiser of theta over the table grid, refined to 1e-10 (bisection
/// on theta' when it changes sign, golden-section otherwise). Equal minima
/// prefer the smaller |m|, then the positive one. A minimum on the grid edge
/// raises no_interior_minimum.
MbarResult find_mbar(const PotentialTable& table);

struct LyapunovTerms {
  double local = 0.0;        // sum_i w_i (theta(u_i) - theta(mbar))
  double interaction = 0.0;  // 1/4 sum_ij w_i w_j J_ij (f_i - f_j)^2
  double exterior = 0.0;     // 1/2 sum_i w_i tail_i (f_i - f(0))^2
  double total() const noexcept { return local + interaction + exterior; }
};

LyapunovTerms lyapunov_terms(const Model& model, const PotentialTable& table,
                             std::span<const double> u);
double lyapunov_F(const Model& model, const PotentialTable& table, std::span<const double> u);

/// Pointwise integrand
/// (K(f o u) + h - g^{-1}(u)/beta)(g(beta K(f o u) + beta h) - u) f'(u).
std::vector<double> dissipation_integrand(const Model& model, std::span<const double> u);
double dissipation_I(const Model& model, std::span<const double> u);

inline constexpr double kDescentSlack = 1e-8;

struct DescentReport {
  bool monotone = true;
  double max_increase = 0.0;       // max_k F_{k+1} - F_k
  double identity_residual = 0.0;  // max_k |(F_{k+1} - F_k)/dt_k + I(u_k)|
  double min_integrand = 0.0;      // smallest pointwise dissipation integrand
  std::vector<double> F;
  std::vector<double> I;
};

DescentReport descent_check(const Model& model, const PotentialTable& table,
                            const Trajectory& trajectory);

}  // namespace nonlocal
