#include "nonlocal/comparison.hpp"

#include <algorithm>
#include <cmath>

#include "nonlocal/bounds.hpp"
#include "nonlocal/error.hpp"
#include "nonlocal/io_format.hpp"

namespace nonlocal {

SpaceTimeField::SpaceTimeField(std::size_t nodes, std::size_t time_points, double dt)
    : nodes_(nodes), time_points_(time_points), dt_(dt), values_(nodes * time_points, 0.0) {
  if (time_points < 2 || !(dt > 0.0)) {
    throw Error(ErrorKind::invalid_step, "space-time field needs >= 2 time points and dt > 0");
  }
}

SpaceTimeField SpaceTimeField::constant_in_time(std::span<const double> u0,
                                                std::size_t time_points, double dt) {
  SpaceTimeField w(u0.size(), time_points, dt);
  for (std::size_t k = 0; k < time_points; ++k) std::copy(u0.begin(), u0.end(), w.slice(k).begin());
  return w;
}

SpaceTimeField SpaceTimeField::from_trajectory(const Trajectory& trajectory) {
  const std::size_t nt = trajectory.size();
  if (nt < 2) throw Error(ErrorKind::invalid_step, "trajectory too short");
  const double dt = trajectory.times[1] - trajectory.times[0];
  for (std::size_t k = 1; k < nt; ++k) {
    const double expected = static_cast<double>(k) * dt;
    if (std::abs(trajectory.times[k] - expected) > 1e-9 * std::max(1.0, expected)) {
      throw Error(ErrorKind::invalid_step, "trajectory times are not uniform");
    }
  }
  SpaceTimeField w(trajectory.states.front().size(), nt, dt);
  for (std::size_t k = 0; k < nt; ++k) {
    std::copy(trajectory.states[k].begin(), trajectory.states[k].end(), w.slice(k).begin());
  }
  return w;
}

double sup_distance(const SpaceTimeField& a, const SpaceTimeField& b) {
  if (a.values().size() != b.values().size()) {
    throw Error(ErrorKind::dimension_mismatch, "space-time fields differ in shape");
  }
  double m = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) {
    m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  }
  return m;
}

SpaceTimeField g_operator_apply(const Model& model, const SpaceTimeField& w) {
  require_same_size(model.grid(), w.slice(0));
  const std::size_t n = w.nodes();
  const double dt = w.dt();
  const double decay = std::exp(-dt);
  SpaceTimeField out(n, w.time_points(), dt);

  // I_k = int_0^{t_k} e^{-(t_k - s)} phi(s) ds by the trapezoid rule:
  // I_k = e^{-dt} I_{k-1} + dt/2 (e^{-dt} phi_{k-1} + phi_k).
  std::vector<double> integral(n, 0.0);
  std::vector<double> phi_prev = map_F(model, w.slice(0));
  const auto w0 = w.slice(0);
  std::copy(w0.begin(), w0.end(), out.slice(0).begin());
  for (std::size_t k = 1; k < w.time_points(); ++k) {
    const std::vector<double> phi = map_F(model, w.slice(k));
    const double e_t = std::exp(-w.time(k));
    auto dst = out.slice(k);
    for (std::size_t i = 0; i < n; ++i) {
      integral[i] = decay * integral[i] + 0.5 * dt * (decay * phi_prev[i] + phi[i]);
      dst[i] = e_t * w0[i] + integral[i];
    }
    phi_prev = phi;
  }
  return out;
}

ContractionEstimate contraction_constants(const Model& model, double initial_sup_norm) {
  ContractionEstimate est;
  const double norm1 = kernel_norm(*model.kernel, 1.0);
  double mass = 1.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    mass = std::max(mass, model.kernel->row_mass()[i] + model.kernel->tail_mass()[i]);
  }
  est.mass = std::max(1.0, norm1);

  // Picard iterates of G stay in the ball where e^{-t}|w0| + (1 - e^{-t}) sup|g| lives.
  double bound = initial_sup_norm;
  if (model.g.range_bound()) {
    bound = std::max(bound, *model.g.range_bound());
  } else {
    const GrowthConstants gc = GrowthConstants::from_model(model);
    const double product = gc.k1 * model.beta * gc.c1 * mass;
    if (product < 1.0) {
      const double ball =
          (gc.k1 * model.beta * (mass * gc.c2 + model.h) + gc.k2) / (1.0 - product);
      bound = std::max(bound, ball);
    } else if (model.f.deriv_growth().slope == 0.0 && model.g.deriv_growth().slope == 0.0) {
      // Globally Lipschitz f and g: the constants do not depend on the range.
      est.state_bound = kInfinity;
      est.activation_bound = kInfinity;
      est.M = kLipschitzSafety * model.f.deriv_growth().offset;
      est.N = kLipschitzSafety * model.g.deriv_growth().offset;
      return est;
    } else {
      throw Error(ErrorKind::hypothesis_violation,
                  "no bounded invariant ball for the G iterates (unbounded g with "
                  "k1*beta*c1 >= 1)");
    }
  }
  est.state_bound = bound;
  const LinearBound& fg = model.f.growth();
  est.activation_bound = model.beta * (mass * fg.at(bound) + model.h);
  est.M = lipschitz_on_interval(model.f, {-bound, bound});
  est.N = lipschitz_on_interval(model.g, {-est.activation_bound, est.activation_bound});
  return est;
}

GFixedPointResult g_fixed_point(const Model& model, std::span<const double> u0, double T,
                                double dt, double tol, std::size_t max_iterations) {
  require_same_size(model.grid(), u0);
  if (!(T > 0.0) || !(dt > 0.0) || dt > T) {
    throw Error(ErrorKind::invalid_step, "need 0 < dt <= T");
  }
  if (!(tol > 0.0)) throw Error(ErrorKind::validation, "tolerance must be positive");
  const auto total_steps = static_cast<std::size_t>(std::llround(T / dt));
  if (std::abs(static_cast<double>(total_steps) * dt - T) > 1e-9 * T) {
    throw Error(ErrorKind::invalid_step, "T must be a multiple of dt");
  }

  double sup0 = 0.0;
  for (double x : u0) sup0 = std::max(sup0, std::abs(x));
  const ContractionEstimate est = contraction_constants(model, sup0);
  const double full = est.factor(model.beta, T);
  std::size_t pieces = 1;
  if (full > kSubHorizonTargetFactor) {
    pieces = static_cast<std::size_t>(std::ceil(full / kSubHorizonTargetFactor));
  }
  pieces = std::min(pieces, total_steps);

  GFixedPointResult result;
  result.horizons = pieces;
  result.field = SpaceTimeField(u0.size(), total_steps + 1, dt);
  std::vector<double> start(u0.begin(), u0.end());
  std::size_t offset = 0;
  for (std::size_t piece = 0; piece < pieces; ++piece) {
    const std::size_t steps = total_steps / pieces + (piece < total_steps % pieces ? 1 : 0);
    const double horizon = static_cast<double>(steps) * dt;
    result.contraction_bound =
        std::max(result.contraction_bound, est.factor(model.beta, horizon));

    SpaceTimeField w = SpaceTimeField::constant_in_time(start, steps + 1, dt);
    double previous = 0.0;
    bool converged = false;
    for (std::size_t it = 0; it < max_iterations; ++it) {
      SpaceTimeField next = g_operator_apply(model, w);
      const double inc = sup_distance(next, w);
      result.increments.push_back(inc);
      ++result.iterations;
      if (it > 0 && previous > 1e-13) {
        result.max_ratio = std::max(result.max_ratio, inc / previous);
      }
      previous = inc;
      w = std::move(next);
      if (inc <= tol) {
        converged = true;
        break;
      }
    }
    if (!converged) {
      throw NonConvergenceError(ErrorKind::contraction_failure, previous, result.iterations,
                                "G iteration did not reach tolerance " + format_double(tol));
    }
    result.final_increment = std::max(result.final_increment, previous);
    for (std::size_t k = (piece == 0 ? 0 : 1); k <= steps; ++k) {
      auto src = w.slice(k);
      std::copy(src.begin(), src.end(), result.field.slice(offset + k).begin());
    }
    auto last = w.slice(steps);
    start.assign(last.begin(), last.end());
    offset += steps;
  }
  return result;
}

double certificate_violation(const Model& model, const SpaceTimeField& w, int sign) {
  const std::size_t n = w.nodes();
  double worst = -kInfinity;
  std::vector<double> r_prev = rhs(model, w.slice(0));
  for (std::size_t k = 0; k + 1 < w.time_points(); ++k) {
    const std::vector<double> r_next = rhs(model, w.slice(k + 1));
    for (std::size_t i = 0; i < n; ++i) {
      const double derivative = (w.at(k + 1, i) - w.at(k, i)) / w.dt();
      const double average = 0.5 * (r_prev[i] + r_next[i]);
      worst = std::max(worst, sign * (derivative - average));
    }
    r_prev = r_next;
  }
  return worst;
}

OrderingVerdict verify_ordering(const Model& model, const SpaceTimeField& sub,
                                const SpaceTimeField& sol, const SpaceTimeField& super) {
  auto same_shape = [](const SpaceTimeField& a, const SpaceTimeField& b) {
    return a.nodes() == b.nodes() && a.time_points() == b.time_points() &&
           std::abs(a.dt() - b.dt()) <= 1e-12 * a.dt();
  };
  if (!same_shape(sub, sol) || !same_shape(super, sol)) {
    throw Error(ErrorKind::dimension_mismatch, "sub, solution and super grids differ");
  }
  require_same_size(model.grid(), sol.slice(0));
  const double allowed = kCertificateFactor * sol.dt();
  if (const double v = certificate_violation(model, sub, +1); v > allowed) {
    throw Error(ErrorKind::invalid_certificate,
                "subsolution inequality violated by " + format_double(v));
  }
  if (const double v = certificate_violation(model, super, -1); v > allowed) {
    throw Error(ErrorKind::invalid_certificate,
                "supersolution inequality violated by " + format_double(v));
  }

  OrderingVerdict verdict;
  double worst = 0.0;
  verdict.max_sub_excess = -kInfinity;
  verdict.max_super_deficit = -kInfinity;
  for (std::size_t k = 0; k < sol.time_points(); ++k) {
    for (std::size_t i = 0; i < sol.nodes(); ++i) {
      const double a = sub.at(k, i) - sol.at(k, i);
      const double b = sol.at(k, i) - super.at(k, i);
      verdict.max_sub_excess = std::max(verdict.max_sub_excess, a);
      verdict.max_super_deficit = std::max(verdict.max_super_deficit, b);
      if (std::max(a, b) > worst) {
        worst = std::max(a, b);
        verdict.worst_time = sol.time(k);
      }
    }
  }
  verdict.pass = verdict.max_sub_excess <= kOrderingTolerance &&
                 verdict.max_super_deficit <= kOrderingTolerance;
  return verdict;
}

}  // namespace nonlocal
