#include "nonlocal/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "nonlocal/error.hpp"
#include "nonlocal/io_format.hpp"

namespace nonlocal {

GrowthConstants GrowthConstants::from_model(const Model& model) {
  return {model.g.growth().slope, model.g.growth().offset, model.f.growth().slope,
          model.f.growth().offset};
}

BoundsReport absorbing_radius(const Model& model, const GrowthConstants& growth, double p,
                              double sigma) {
  require_exponent(p);
  if (std::isinf(p)) throw Error(ErrorKind::invalid_exponent, "absorbing radius needs p < inf");
  if (!(sigma > 0.0)) throw Error(ErrorKind::validation, "sigma must be positive");
  const double beta = model.beta;
  const double product = growth.k1 * beta * growth.c1;
  if (!(product < 1.0)) {
    throw Error(ErrorKind::hypothesis_violation,
                "hypothesis k1*beta*c1 < 1 violated (k1*beta*c1 = " + format_double(product) +
                    ")");
  }
  BoundsReport r;
  r.p = p;
  r.sigma = sigma;
  r.epsilon = 1.0 - product;
  const double numerator = growth.k1 * beta * growth.c2 + growth.k1 * beta * model.h + growth.k2;
  r.R = (1.0 + sigma) * numerator * std::pow(model.grid().measure(), 1.0 / p) / r.epsilon;
  r.decay_rate = sigma * p * r.epsilon / (1.0 + sigma);
  return r;
}

double linfty_rho(const Model& model, const GrowthConstants& growth, double p, double R) {
  const double q = conjugate_exponent(p);
  const double Jq = kernel_norm(*model.kernel, q);
  const double beta = model.beta;
  const double omega = std::isinf(p) ? 1.0 : std::pow(model.grid().measure(), 1.0 / p);
  return growth.k1 * beta * Jq * growth.c1 * R + growth.k1 * beta * Jq * growth.c2 * omega +
         growth.k1 * beta * model.h + growth.k2;
}

AbsorbingVerdict check_absorbing(const DomainGrid& grid, const Trajectory& trajectory,
                                 const BoundsReport& report) {
  AbsorbingVerdict v;
  v.slope_threshold = -kAbsorbingSlopeFactor * report.decay_rate;
  const std::size_t n = trajectory.size();
  std::vector<double> norms(n);
  for (std::size_t k = 0; k < n; ++k) norms[k] = lp_norm(grid, trajectory.states[k], report.p);

  bool slopes_ok = true;
  bool stays_inside = true;
  for (std::size_t k = 0; k < n; ++k) {
    if (!v.entered && norms[k] < report.R) {
      v.entered = true;
      v.entry_time = trajectory.times[k];
    }
    if (v.entered) {
      v.max_ratio_after_entry = std::max(v.max_ratio_after_entry,
                                         report.R > 0.0 ? norms[k] / report.R : kInfinity);
      if (norms[k] > report.R * (1.0 + kAbsorbingReentryTolerance)) stays_inside = false;
    }
    if (k + 1 < n && norms[k] >= report.R && norms[k] > 0.0 && norms[k + 1] > 0.0) {
      const double dt = trajectory.times[k + 1] - trajectory.times[k];
      const double slope = report.p * (std::log(norms[k + 1]) - std::log(norms[k])) / dt;
      ++v.outside_steps;
      v.max_outside_slope = std::max(v.max_outside_slope, slope);
      if (slope > v.slope_threshold) slopes_ok = false;
    }
  }
  v.pass = slopes_ok && stays_inside;
  return v;
}

ScalarTrajectory scalar_envelope(const Model& model, double start, double t_end, double dt) {
  if (!(dt > 0.0)) throw Error(ErrorKind::invalid_step, "time step must be positive");
  if (!(t_end > 0.0)) throw Error(ErrorKind::invalid_step, "t_end must be positive");
  const double decay = std::exp(-dt);
  ScalarTrajectory out;
  double lambda = start;
  out.times.push_back(0.0);
  out.values.push_back(lambda);
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t_prev = static_cast<double>(k - 1) * dt;
    const double t = k == steps ? t_end : static_cast<double>(k) * dt;
    const double a = k == steps ? std::exp(-(t - t_prev)) : decay;
    const double F = model.g(model.beta * (model.f(lambda) + model.h));
    lambda = F + a * (lambda - F);
    out.times.push_back(t);
    out.values.push_back(lambda);
  }
  return out;
}

}  // namespace nonlocal
