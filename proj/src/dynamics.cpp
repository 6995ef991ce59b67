#include "nonlocal/dynamics.hpp"

#include <cmath>

#include "nonlocal/error.hpp"
#include "nonlocal/io_format.hpp"

namespace nonlocal {

Model Model::make(Kernel kernel, Nonlinearity f, Nonlinearity g, double beta, double h) {
  if (!(beta >= 0.0) || !(h >= 0.0)) {
    throw Error(ErrorKind::validation, "beta and h must be nonnegative");
  }
  Model m;
  m.kernel = std::make_shared<const Kernel>(std::move(kernel));
  m.f = std::move(f);
  m.g = std::move(g);
  m.beta = beta;
  m.h = h;
  return m;
}

namespace {

void require_finite(std::span<const double> v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) {
      throw Error(ErrorKind::numerical_overflow, std::string("non-finite value in ") + what);
    }
  }
}

}  // namespace

std::vector<double> activation(const Model& model, std::span<const double> u) {
  require_same_size(model.grid(), u);
  std::vector<double> fu(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) fu[i] = model.f(u[i]);
  std::vector<double> a = apply_K(*model.kernel, fu, model.f(0.0));
  for (double& x : a) x = model.beta * x + model.beta * model.h;
  require_finite(a, "activation");
  return a;
}

std::vector<double> map_F(const Model& model, std::span<const double> u) {
  std::vector<double> out = activation(model, u);
  for (double& x : out) x = model.g(x);
  require_finite(out, "F(u)");
  return out;
}

std::vector<double> rhs(const Model& model, std::span<const double> u) {
  std::vector<double> out = map_F(model, u);
  for (std::size_t i = 0; i < u.size(); ++i) out[i] -= u[i];
  return out;
}

std::vector<double> jacobian_vector(const Model& model, std::span<const double> u,
                                    std::span<const double> v) {
  require_same_size(model.grid(), v);
  const std::vector<double> a = activation(model, u);
  std::vector<double> fv(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) fv[i] = model.f.deriv(u[i]) * v[i];
  std::vector<double> out = apply_K(*model.kernel, fv, 0.0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    out[i] = -v[i] + model.g.deriv(a[i]) * model.beta * out[i];
  }
  require_finite(out, "jacobian-vector product");
  return out;
}

const char* to_string(Scheme scheme) noexcept {
  return scheme == Scheme::etd1 ? "etd1" : "rk4";
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "etd1") return Scheme::etd1;
  if (name == "rk4") return Scheme::rk4;
  throw Error(ErrorKind::validation, "unknown scheme '" + name + "'");
}

namespace {

void require_step(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorKind::invalid_step, "time step must be positive, got " + format_double(dt));
  }
}

}  // namespace

std::vector<double> step_etd1(const Model& model, std::span<const double> u, double dt) {
  require_step(dt);
  const double decay = std::exp(-dt);
  std::vector<double> out = map_F(model, u);
  // F + e^{-dt}(u - F): a convex combination that cannot leave [min, max].
  for (std::size_t i = 0; i < u.size(); ++i) out[i] += decay * (u[i] - out[i]);
  return out;
}

std::vector<double> step_rk4(const Model& model, std::span<const double> u, double dt) {
  require_step(dt);
  const std::size_t n = u.size();
  std::vector<double> tmp(n);
  const std::vector<double> k1 = rhs(model, u);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k1[i];
  const std::vector<double> k2 = rhs(model, tmp);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k2[i];
  const std::vector<double> k3 = rhs(model, tmp);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = u[i] + dt * k3[i];
  const std::vector<double> k4 = rhs(model, tmp);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = u[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

std::vector<double> step(const Model& model, std::span<const double> u, double dt,
                         Scheme scheme) {
  return scheme == Scheme::etd1 ? step_etd1(model, u, dt) : step_rk4(model, u, dt);
}

namespace {

void record(const Model& model, const Recorder& recorder, Trajectory& traj, double t,
            std::span<const double> u) {
  const DomainGrid& grid = model.grid();
  traj.times.push_back(t);
  traj.states.emplace_back(u.begin(), u.end());
  traj.l1.push_back(lp_norm(grid, u, 1.0));
  traj.l2.push_back(lp_norm(grid, u, 2.0));
  traj.linf.push_back(lp_norm(grid, u, kInfinity));
  if (recorder.extra) traj.extra.push_back(recorder.extra(u));
}

}  // namespace

Trajectory integrate(const Model& model, std::span<const double> u0, double t_end, double dt,
                     Scheme scheme, const Recorder& recorder) {
  require_step(dt);
  if (!(t_end > 0.0)) throw Error(ErrorKind::invalid_step, "t_end must be positive");
  require_same_size(model.grid(), u0);
  const std::size_t stride = recorder.state_stride == 0 ? 1 : recorder.state_stride;

  Trajectory traj;
  traj.extra_names = recorder.extra_names;
  std::vector<double> u(u0.begin(), u0.end());
  for (double x : u) {
    if (!std::isfinite(x)) throw DivergenceError(0.0, "initial state is not finite");
  }
  record(model, recorder, traj, 0.0, u);

  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-9));
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t_prev = static_cast<double>(k - 1) * dt;
    const double t = k == steps ? t_end : static_cast<double>(k) * dt;
    try {
      u = step(model, u, t - t_prev, scheme);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::numerical_overflow) throw DivergenceError(t, e.what());
      throw;
    }
    for (double x : u) {
      if (!std::isfinite(x)) {
        throw DivergenceError(t, "state became non-finite at t = " + format_double(t));
      }
    }
    if (k % stride == 0 || k == steps) record(model, recorder, traj, t, u);
  }
  return traj;
}

}  // namespace nonlocal
