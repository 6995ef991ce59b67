#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "nonlocal/grid.hpp"
#include "nonlocal/kernel.hpp"
#include "nonlocal/nonlinearity.hpp"

namespace nonlocal {

/// Everything needed to evaluate u' = -u + g(beta K(f o u) + beta h).
struct Model {
  std::shared_ptr<const Kernel> kernel;
  Nonlinearity f = Nonlinearity::identity();
  Nonlinearity g = Nonlinearity::tanh();
  double beta = 1.0;
  double h = 0.0;

  static Model make(Kernel kernel, Nonlinearity f, Nonlinearity g, double beta, double h);

  const DomainGrid& grid() const { return kernel->grid(); }
  std::size_t size() const { return kernel->size(); }
};

/// beta * K(f o u) + beta * h, with f(0) seen on the exterior.
std::vector<double> activation(const Model& model, std::span<const double> u);

/// F(u) = g(beta K(f o u) + beta h).
std::vector<double> map_F(const Model& model, std::span<const double> u);

/// -u + F(u).
std::vector<double> rhs(const Model& model, std::span<const double> u);

/// Derivative of the right-hand side at u applied to v:
/// -v + g'(activation) * beta * K(f'(u) v), exterior 0 since v vanishes outside.
std::vector<double> jacobian_vector(const Model& model, std::span<const double> u,
                                    std::span<const double> v);

enum class Scheme { etd1, rk4 };

const char* to_string(Scheme scheme) noexcept;
Scheme scheme_from_string(const std::string& name);

/// Exponential Euler from the variation-of-constants formula with F frozen:
/// u+ = e^{-dt} u + (1 - e^{-dt}) F(u).
std::vector<double> step_etd1(const Model& model, std::span<const double> u, double dt);

std::vector<double> step_rk4(const Model& model, std::span<const double> u, double dt);

std::vector<double> step(const Model& model, std::span<const double> u, double dt, Scheme scheme);

/// Extra per-record scalars (e.g. Lyapunov value and dissipation).
struct Recorder {
  std::size_t state_stride = 1;
  std::vector<std::string> extra_names;
  std::function<std::vector<double>(std::span<const double>)> extra;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;
  std::vector<double> l1;
  std::vector<double> l2;
  std::vector<double> linf;
  std::vector<std::string> extra_names;
  std::vector<std::vector<double>> extra;  // extra[k] matches times[k]

  std::size_t size() const noexcept { return times.size(); }
};

/// Integrates from t = 0 to t_end. The last step is shortened so the final
/// time is exactly t_end. Records every state_stride-th step plus the final
/// one. Non-finite states raise DivergenceError with the failure time.
Trajectory integrate(const Model& model, std::span<const double> u0, double t_end, double dt,
                     Scheme scheme, const Recorder& recorder = {});

}  // namespace nonlocal
