#include "nonlocal/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nonlocal/error.hpp"
#include "nonlocal/io_format.hpp"
#include "nonlocal/kernels.hpp"
#include "nonlocal/summation.hpp"

namespace nonlocal {
namespace {

constexpr unsigned kMaxDepth = 40;
constexpr unsigned kStallCheckDepth = 3;
constexpr double kGolden = 0.6180339887498949;
constexpr double kTieTolerance = 1e-12;

Error domain_error(double m, double limit) {
  return Error(ErrorKind::domain, "|m| = " + format_double(std::abs(m)) +
                                      " is not below rho - delta = " + format_double(limit));
}

double margin(double rho) { return kAdmissibleMargin * rho; }

void require_inputs(const Nonlinearity& f, const Nonlinearity& g, double beta, double rho) {
  if (!(beta > 0.0)) throw Error(ErrorKind::domain, "beta must be positive");
  if (!(rho > 0.0) || !std::isfinite(rho)) {
    throw Error(ErrorKind::domain, "rho must be positive and finite");
  }
  if (!f.monotone()) throw Error(ErrorKind::hypothesis_violation, "f must be strictly increasing");
  if (!g.invertible()) throw Error(ErrorKind::hypothesis_violation, "g must be invertible");
}

double g_inverse(const Nonlinearity& g, double s) {
  try {
    return g.inverse(s);
  } catch (const Error& e) {
    throw Error(ErrorKind::domain, std::string("g inverse undefined: ") + e.what());
  }
}

struct Piece {
  double value;
  double l1;  // integral of |phi|
};

template <typename Phi>
Piece kronrod(const Phi& phi, double a, double b) {
  double error = 0.0;
  double l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      phi, a, b, 0, 0.0, &error, &l1);
  return {v, l1};
}

// Bisects until the two halves agree with the whole to a fraction of the
// absolute integral; this stays cheap on the short intervals the table uses.
// Once the discrepancy stops shrinking it is round-off in phi (e.g. an inverse
// near the edge of its range) and further splitting cannot help.
template <typename Phi>
double adaptive(const Phi& phi, double a, double b, Piece whole, unsigned depth,
                double parent_gap) {
  const double mid = 0.5 * (a + b);
  const Piece left = kronrod(phi, a, mid);
  const Piece right = kronrod(phi, mid, b);
  const double sum = left.value + right.value;
  const double gap = std::abs(sum - whole.value);
  const bool stalled = depth >= kStallCheckDepth && gap >= 0.5 * parent_gap;
  if (depth >= kMaxDepth || stalled || gap <= kQuadratureTolerance * (left.l1 + right.l1)) {
    return sum;
  }
  return adaptive(phi, a, mid, left, depth + 1, gap) +
         adaptive(phi, mid, b, right, depth + 1, gap);
}

// int_a^b g^{-1}(s) f'(s) ds
double weighted_inverse_integral(const Nonlinearity& f, const Nonlinearity& g, double a,
                                 double b) {
  if (a == b) return 0.0;
  const bool flip = a > b;
  if (flip) std::swap(a, b);
  auto phi = [&](double s) { return g_inverse(g, s) * f.deriv(s); };
  const double value = adaptive(phi, a, b, kronrod(phi, a, b), 0, kInfinity);
  return flip ? -value : value;
}

double zero_of_f(const Nonlinearity& f, double limit) {
  if (f.eval(0.0) == 0.0) return 0.0;
  try {
    const double s0 = f.inverse(0.0);
    if (std::abs(s0) < limit) return s0;
  } catch (const Error&) {
  }
  return 0.0;
}

double theta_from_i(const PotentialInputs& in, double m, double i_value) {
  const double fm = in.f.eval(m);
  return -0.5 * fm * fm - in.h * fm - i_value / in.beta;
}

}  // namespace

PotentialInputs PotentialInputs::from_model(const Model& model) {
  if (!model.g.range_bound()) {
    throw Error(ErrorKind::hypothesis_violation, "bounded-range hypothesis |g| < rho violated");
  }
  return {model.f, model.g, model.beta, model.h, *model.g.range_bound()};
}

double potential_theta(const Nonlinearity& f, const Nonlinearity& g, double beta, double h,
                       double rho, double m) {
  require_inputs(f, g, beta, rho);
  const double limit = rho - margin(rho);
  if (!(std::abs(m) < limit)) throw domain_error(m, limit);
  const double s0 = zero_of_f(f, limit);
  const double i_value = -weighted_inverse_integral(f, g, s0, m);
  return theta_from_i({f, g, beta, h, rho}, m, i_value);
}

double potential_theta_prime(const PotentialInputs& in, double m) {
  return in.f.deriv(m) * (g_inverse(in.g, m) / in.beta - in.f.eval(m) - in.h);
}

PotentialTable PotentialTable::build(const PotentialInputs& inputs) {
  require_inputs(inputs.f, inputs.g, inputs.beta, inputs.rho);
  PotentialTable table;
  table.inputs_ = inputs;
  table.delta_ = margin(inputs.rho);
  const double limit = table.limit();
  table.anchor_ = zero_of_f(inputs.f, limit);

  const std::size_t n = kPotentialGridPoints;
  const double half = static_cast<double>(n - 1) / 2.0;
  table.m_grid_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    // Symmetric construction keeps m_k = -m_{n-1-k} and the middle node at 0.
    table.m_grid_[k] = (static_cast<double>(k) - half) / half * limit;
  }

  std::vector<double> cells(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    cells[k] = weighted_inverse_integral(inputs.f, inputs.g, table.m_grid_[k],
                                         table.m_grid_[k + 1]);
  }
  const auto j = static_cast<std::size_t>(
      std::llround((std::clamp(table.anchor_, -limit, limit) / limit + 1.0) * half));
  table.i_values_.assign(n, 0.0);
  table.i_values_[j] =
      -weighted_inverse_integral(inputs.f, inputs.g, table.anchor_, table.m_grid_[j]);
  for (std::size_t k = j + 1; k < n; ++k) {
    table.i_values_[k] = table.i_values_[k - 1] - cells[k - 1];
  }
  for (std::size_t k = j; k-- > 0;) {
    table.i_values_[k] = table.i_values_[k + 1] + cells[k];
  }
  table.theta_values_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    table.theta_values_[k] = theta_from_i(inputs, table.m_grid_[k], table.i_values_[k]);
  }
  const MbarResult found = find_mbar(table);
  table.mbar_ = found.mbar;
  table.theta_mbar_ = found.theta_mbar;
  return table;
}

double PotentialTable::i(double m) const {
  const double lim = limit();
  if (!(std::abs(m) <= lim)) throw domain_error(m, lim);
  const double half = static_cast<double>(m_grid_.size() - 1) / 2.0;
  const auto k = static_cast<std::size_t>(std::llround((m / lim + 1.0) * half));
  return i_values_[k] - weighted_inverse_integral(inputs_.f, inputs_.g, m_grid_[k], m);
}

double PotentialTable::theta(double m) const { return theta_from_i(inputs_, m, i(m)); }

MbarResult find_mbar(const PotentialTable& table) {
  const auto& m = table.m_grid();
  const auto& th = table.theta_values();
  const std::size_t n = m.size();
  const std::size_t global = static_cast<std::size_t>(
      std::min_element(th.begin(), th.end()) - th.begin());
  if (global == 0 || global == n - 1) {
    throw Error(ErrorKind::no_interior_minimum,
                "theta attains its grid minimum at m = " + format_double(m[global]));
  }

  const PotentialInputs& in = table.inputs();
  auto refine = [&](std::size_t k) {
    double lo = m[k - 1];
    double hi = m[k + 1];
    if (potential_theta_prime(in, lo) <= 0.0 && potential_theta_prime(in, hi) >= 0.0) {
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double d = potential_theta_prime(in, mid);
        if (d == 0.0) return mid;
        (d < 0.0 ? lo : hi) = mid;
      }
      return 0.5 * (lo + hi);
    }
    double a = lo + (1.0 - kGolden) * (hi - lo);
    double b = lo + kGolden * (hi - lo);
    double fa = table.theta(a);
    double fb = table.theta(b);
    while (hi - lo > 0.1 * kMbarTolerance) {
      if (fa <= fb) {
        hi = b;
        b = a;
        fb = fa;
        a = lo + (1.0 - kGolden) * (hi - lo);
        fa = table.theta(a);
      } else {
        lo = a;
        a = b;
        fa = fb;
        b = lo + kGolden * (hi - lo);
        fb = table.theta(b);
      }
    }
    return 0.5 * (lo + hi);
  };

  std::optional<MbarResult> best;
  for (std::size_t k = 1; k + 1 < n; ++k) {
    if (!(th[k] <= th[k - 1] && th[k] <= th[k + 1])) continue;
    // Candidates far above the grid minimum cannot win after refinement.
    if (th[k] - th[global] > 1e-6 * (1.0 + std::abs(th[global]))) continue;
    const double mk = refine(k);
    const MbarResult cand{mk, table.theta(mk)};
    if (!best) {
      best = cand;
      continue;
    }
    const double scale = kTieTolerance * (1.0 + std::abs(best->theta_mbar));
    if (cand.theta_mbar < best->theta_mbar - scale) {
      best = cand;
    } else if (std::abs(cand.theta_mbar - best->theta_mbar) <= scale) {
      const double a = std::abs(cand.mbar);
      const double b = std::abs(best->mbar);
      if (a < b || (a == b && cand.mbar > best->mbar)) best = cand;
    }
  }
  return *best;
}

LyapunovTerms lyapunov_terms(const Model& model, const PotentialTable& table,
                             std::span<const double> u) {
  require_same_size(model.grid(), u);
  const double lim = table.limit();
  for (double x : u) {
    if (!(std::abs(x) < lim)) throw domain_error(x, lim);
  }
  const auto& w = model.grid().weights();
  const auto& tail = model.kernel->tail_mass();
  std::vector<double> fu(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) fu[i] = model.f.eval(u[i]);
  const double f0 = model.f.eval(0.0);

  LyapunovTerms terms;
  terms.local = pairwise_sum(0, u.size(), [&](std::size_t i) {
    return w[i] * (table.theta(u[i]) - table.theta_mbar());
  });
  terms.interaction =
      0.25 * kernels::interaction_sum(Exec::parallel, model.kernel->view(), w, fu);
  terms.exterior = 0.5 * pairwise_sum(0, u.size(), [&](std::size_t i) {
                     const double d = fu[i] - f0;
                     return w[i] * tail[i] * d * d;
                   });
  return terms;
}

double lyapunov_F(const Model& model, const PotentialTable& table, std::span<const double> u) {
  return lyapunov_terms(model, table, u).total();
}

std::vector<double> dissipation_integrand(const Model& model, std::span<const double> u) {
  if (!(model.beta > 0.0)) throw Error(ErrorKind::domain, "beta must be positive");
  const std::vector<double> a = activation(model, u);
  std::vector<double> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double first = (a[i] - g_inverse(model.g, u[i])) / model.beta;
    out[i] = first * (model.g.eval(a[i]) - u[i]) * model.f.deriv(u[i]);
  }
  return out;
}

double dissipation_I(const Model& model, std::span<const double> u) {
  const std::vector<double> integrand = dissipation_integrand(model, u);
  const auto& w = model.grid().weights();
  return pairwise_sum(0, u.size(), [&](std::size_t i) { return w[i] * integrand[i]; });
}

DescentReport descent_check(const Model& model, const PotentialTable& table,
                            const Trajectory& trajectory) {
  DescentReport report;
  const std::size_t n = trajectory.size();
  report.F.resize(n);
  report.I.resize(n);
  report.min_integrand = kInfinity;
  for (std::size_t k = 0; k < n; ++k) {
    const auto& u = trajectory.states[k];
    report.F[k] = lyapunov_F(model, table, u);
    const std::vector<double> integrand = dissipation_integrand(model, u);
    const auto& w = model.grid().weights();
    report.I[k] = pairwise_sum(0, u.size(), [&](std::size_t i) { return w[i] * integrand[i]; });
    for (double v : integrand) report.min_integrand = std::min(report.min_integrand, v);
  }
  report.max_increase = -kInfinity;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double dF = report.F[k + 1] - report.F[k];
    const double dt = trajectory.times[k + 1] - trajectory.times[k];
    report.max_increase = std::max(report.max_increase, dF);
    report.identity_residual =
        std::max(report.identity_residual, std::abs(dF / dt + report.I[k]));
  }
  if (n < 2) report.max_increase = 0.0;
  report.monotone = report.max_increase <= kDescentSlack;
  return report;
}

}  // namespace nonlocal
