#pragma once

#include <cstddef>
#include <limits>
#include <vector>

#include "nonlocal/dynamics.hpp"

namespace nonlocal {

/// |g(x)| <= k1|x| + k2 and |f(x)| <= c1|x| + c2.
struct GrowthConstants {
  double k1 = 0.0;
  double k2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;

  /// Declared metadata of the model's g and f.
  static GrowthConstants from_model(const Model& model);
};

struct BoundsReport {
  double epsilon = 0.0;     // 1 - k1 beta c1
  double R = 0.0;           // absorbing radius in L^p
  double decay_rate = 0.0;  // rate of ||u||_p^p outside the ball
  double rho = std::numeric_limits<double>::quiet_NaN();  // L^inf bound once computed
  double sigma = 1.0;
  double p = 2.0;
};

/// Absorbing ball radius
///   R = (1 + sigma)(k1 beta c2 + k1 beta h + k2)|Omega|^{1/p} / (1 - k1 beta c1)
/// and decay rate sigma p (1 - k1 beta c1) / (1 + sigma).
/// Requires k1 beta c1 < 1, sigma > 0 and 1 <= p < inf.
BoundsReport absorbing_radius(const Model& model, const GrowthConstants& growth, double p,
                              double sigma = 1.0);

/// rho = k1 beta ||J||_q c1 R + k1 beta ||J||_q c2 |Omega|^{1/p} + k1 beta h + k2.
double linfty_rho(const Model& model, const GrowthConstants& growth, double p, double R);

inline constexpr double kAbsorbingSlopeFactor = 0.9;
inline constexpr double kAbsorbingReentryTolerance = 1e-6;

struct AbsorbingVerdict {
  bool pass = true;
  bool entered = false;
  double entry_time = std::numeric_limits<double>::quiet_NaN();
  std::size_t outside_steps = 0;
  /// Largest discrete slope of log ||u||_p^p over steps that start outside.
  double max_outside_slope = -std::numeric_limits<double>::infinity();
  double slope_threshold = 0.0;   // -0.9 * decay_rate
  double max_ratio_after_entry = 0.0;  // max ||u||_p / R after first entry
};

/// (a) while ||u||_p >= R the log-derivative of ||u||_p^p is at most
/// -0.9 decay_rate; (b) after first entry ||u||_p stays below R (1 + 1e-6).
AbsorbingVerdict check_absorbing(const DomainGrid& grid, const Trajectory& trajectory,
                                 const BoundsReport& report);

struct ScalarTrajectory {
  std::vector<double> times;
  std::vector<double> values;
};

/// Spatially constant comparison solution: lambda' = -lambda + g(beta (f(lambda) + h)),
/// lambda(0) = start, advanced with the same exponential step as the field.
/// A positive start gives an upper envelope, a negative start a lower one.
ScalarTrajectory scalar_envelope(const Model& model, double start, double t_end, double dt);

}  // namespace nonlocal
