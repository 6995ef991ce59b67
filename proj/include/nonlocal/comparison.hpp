#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nonlocal/dynamics.hpp"

namespace nonlocal {

/// Node-by-time array on a uniform time grid t_k = k dt, k = 0..time_points-1.
class SpaceTimeField {
 public:
  SpaceTimeField() = default;
  SpaceTimeField(std::size_t nodes, std::size_t time_points, double dt);

  static SpaceTimeField constant_in_time(std::span<const double> u0, std::size_t time_points,
                                         double dt);
  /// Requires uniformly spaced trajectory times.
  static SpaceTimeField from_trajectory(const Trajectory& trajectory);

  std::size_t nodes() const noexcept { return nodes_; }
  std::size_t time_points() const noexcept { return time_points_; }
  double dt() const noexcept { return dt_; }
  double time(std::size_t k) const noexcept { return static_cast<double>(k) * dt_; }
  double horizon() const noexcept { return time(time_points_ - 1); }

  std::span<double> slice(std::size_t k) { return {values_.data() + k * nodes_, nodes_}; }
  std::span<const double> slice(std::size_t k) const {
    return {values_.data() + k * nodes_, nodes_};
  }
  double at(std::size_t k, std::size_t i) const { return values_[k * nodes_ + i]; }
  std::span<const double> values() const noexcept { return values_; }

 private:
  std::size_t nodes_ = 0;
  std::size_t time_points_ = 0;
  double dt_ = 0.0;
  std::vector<double> values_;
};

double sup_distance(const SpaceTimeField& a, const SpaceTimeField& b);

/// G(w)(x,t) = e^{-t} w(x,0) + int_0^t e^{-(t-s)} g(beta K(f o w)(x,s) + beta h) ds,
/// with the time integral by the trapezoid rule on w's time grid.
SpaceTimeField g_operator_apply(const Model& model, const SpaceTimeField& w);

/// Lipschitz constants N (of g) and M (of f) on the ranges reachable from
/// initial data bounded by state_bound, and the contraction factor beta N M T.
struct ContractionEstimate {
  double N = 0.0;
  double M = 0.0;
  double state_bound = 0.0;
  double activation_bound = 0.0;
  double mass = 1.0;  // max(1, ||J||_1)

  double factor(double beta, double T) const noexcept { return beta * N * M * T * mass; }
};

ContractionEstimate contraction_constants(const Model& model, double initial_sup_norm);

inline constexpr std::size_t kFixedPointMaxIterations = 1000;
inline constexpr double kSubHorizonTargetFactor = 0.5;

struct GFixedPointResult {
  SpaceTimeField field;
  std::size_t iterations = 0;      // summed over sub-horizons
  std::size_t horizons = 1;
  double contraction_bound = 0.0;  // beta N M T on one sub-horizon
  double max_ratio = 0.0;          // largest successive-increment ratio observed
  double final_increment = 0.0;
  std::vector<double> increments;  // sup-norm of G(w) - w per iteration
};

/// Picard iteration w <- G(w) from w = u0 (constant in time). [0, T] is cut
/// into sub-horizons whose contraction factor is at most 0.5.
GFixedPointResult g_fixed_point(const Model& model, std::span<const double> u0, double T,
                                double dt, double tol,
                                std::size_t max_iterations = kFixedPointMaxIterations);

inline constexpr double kOrderingTolerance = 1e-10;
inline constexpr double kCertificateFactor = 10.0;

struct OrderingVerdict {
  bool pass = true;
  double max_sub_excess = 0.0;    // max of sub - sol
  double max_super_deficit = 0.0; // max of sol - super
  double worst_time = 0.0;
};

/// Checks sub <= sol <= super everywhere to 1e-10. Each certificate is first
/// validated against the evolution inequality with the discrete time
/// derivative and trapezoidal right-hand side (tolerance 10 dt); failures
/// raise invalid_certificate.
OrderingVerdict verify_ordering(const Model& model, const SpaceTimeField& sub,
                                const SpaceTimeField& sol, const SpaceTimeField& super);

/// Largest violation of the sub- (sign = +1) or super- (sign = -1) solution
/// inequality; <= 10 dt means the certificate is accepted.
double certificate_violation(const Model& model, const SpaceTimeField& w, int sign);

}  // namespace nonlocal
