#include "nonlocal/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "nonlocal/error.hpp"
#include "nonlocal/io_format.hpp"

namespace nonlocal {

const char* to_string(KernelFamily family) noexcept {
  switch (family) {
    case KernelFamily::gaussian: return "gaussian";
    case KernelFamily::tophat: return "tophat";
    case KernelFamily::uniform: return "uniform";
    case KernelFamily::custom: return "custom";
  }
  return "unknown";
}

KernelFamily kernel_family_from_string(const std::string& name) {
  if (name == "gaussian") return KernelFamily::gaussian;
  if (name == "tophat") return KernelFamily::tophat;
  if (name == "uniform") return KernelFamily::uniform;
  if (name == "custom") return KernelFamily::custom;
  throw Error(ErrorKind::validation, "unknown kernel family '" + name + "'");
}

KernelSpec KernelSpec::gaussian(double sigma) {
  KernelSpec s;
  s.family = KernelFamily::gaussian;
  s.width = sigma;
  return s;
}

KernelSpec KernelSpec::tophat(double radius) {
  KernelSpec s;
  s.family = KernelFamily::tophat;
  s.radius = radius;
  return s;
}

KernelSpec KernelSpec::uniform() {
  KernelSpec s;
  s.family = KernelFamily::uniform;
  return s;
}

KernelSpec KernelSpec::custom(std::vector<double> matrix) {
  KernelSpec s;
  s.family = KernelFamily::custom;
  s.matrix = std::move(matrix);
  return s;
}

namespace {

std::vector<double> discretize(const KernelSpec& spec, const DomainGrid& grid) {
  const std::size_t n = grid.size();
  std::vector<double> m(n * n, 0.0);
  const double d = static_cast<double>(grid.dim());
  switch (spec.family) {
    case KernelFamily::gaussian: {
      if (!(spec.width > 0.0)) throw Error(ErrorKind::validation, "gaussian width must be > 0");
      const double s2 = spec.width * spec.width;
      const double c = std::pow(2.0 * std::numbers::pi * s2, -0.5 * d);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          m[i * n + j] = c * std::exp(-0.5 * grid.distance_squared(i, j) / s2);
        }
      }
      break;
    }
    case KernelFamily::tophat: {
      if (!(spec.radius > 0.0)) throw Error(ErrorKind::validation, "tophat radius must be > 0");
      const double r = spec.radius;
      const double volume = grid.dim() == 1 ? 2.0 * r : std::numbers::pi * r * r;
      const double c = 1.0 / volume;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          m[i * n + j] = grid.distance_squared(i, j) <= r * r ? c : 0.0;
        }
      }
      break;
    }
    case KernelFamily::uniform: {
      std::fill(m.begin(), m.end(), 1.0 / grid.measure());
      break;
    }
    case KernelFamily::custom: {
      if (spec.matrix.size() != n * n) {
        throw Error(ErrorKind::dimension_mismatch,
                    "custom kernel has " + std::to_string(spec.matrix.size()) +
                        " entries, grid needs " + std::to_string(n * n));
      }
      double max_abs = 0.0;
      for (double v : spec.matrix) {
        if (!std::isfinite(v)) throw Error(ErrorKind::validation, "custom kernel entry not finite");
        max_abs = std::max(max_abs, std::abs(v));
      }
      for (double v : spec.matrix) {
        if (v < 0.0) throw Error(ErrorKind::kernel_sign, "custom kernel has a negative entry");
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          if (std::abs(spec.matrix[i * n + j] - spec.matrix[j * n + i]) >
              kCustomSymmetryTolerance * max_abs) {
            throw Error(ErrorKind::asymmetric_kernel,
                        "custom kernel asymmetric at (" + std::to_string(i) + ", " +
                            std::to_string(j) + ")");
          }
        }
      }
      m = spec.matrix;
      break;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (m[i * n + j] + m[j * n + i]);
      m[i * n + j] = avg;
      m[j * n + i] = avg;
    }
  }
  return m;
}

double max_of(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

}  // namespace

Kernel build_kernel(const KernelSpec& spec, const DomainGrid& grid, Exec exec) {
  Kernel k;
  k.grid_ = grid;
  k.spec_ = spec;
  k.matrix_ = discretize(spec, grid);
  const std::size_t n = grid.size();
  const std::vector<double> ones(n, 1.0);
  const std::vector<double> zeros(n, 0.0);
  k.row_mass_.resize(n);
  kernels::weighted_matvec(exec, k.view(), grid.weights(), ones, zeros, 0.0, k.row_mass_);
  k.tail_mass_.resize(n);
  for (std::size_t i = 0; i < n; ++i) k.tail_mass_[i] = std::max(0.0, 1.0 - k.row_mass_[i]);

  std::vector<double> norms(n);
  k.norm_1_ = max_of(k.row_mass_);
  kernels::row_norms(exec, k.view(), grid.weights(), 2.0, norms);
  k.norm_2_ = max_of(norms);
  k.norm_inf_ = max_of(k.matrix_);
  return k;
}

void apply_K(const Kernel& kernel, std::span<const double> v, double exterior_value,
             std::span<double> out, Exec exec) {
  require_same_size(kernel.grid(), v);
  require_same_size(kernel.grid(), out);
  kernels::weighted_matvec(exec, kernel.view(), kernel.grid().weights(), v, kernel.tail_mass(),
                           exterior_value, out);
}

std::vector<double> apply_K(const Kernel& kernel, std::span<const double> v,
                            double exterior_value, Exec exec) {
  std::vector<double> out(kernel.size());
  apply_K(kernel, v, exterior_value, out, exec);
  return out;
}

double kernel_norm(const Kernel& kernel, double r, Exec exec) {
  require_exponent(r);
  if (r == 1.0) return kernel.norm_1_;
  if (r == 2.0) return kernel.norm_2_;
  if (std::isinf(r)) return kernel.norm_inf_;
  std::vector<double> norms(kernel.size());
  kernels::row_norms(exec, kernel.view(), kernel.grid().weights(), r, norms);
  return max_of(norms);
}

BoundKReport verify_boundK(const Kernel& kernel, std::span<const double> u, double p) {
  const DomainGrid& grid = kernel.grid();
  BoundKReport report;
  report.p = p;
  report.q = conjugate_exponent(p);
  const std::vector<double> Ku = apply_K(kernel, u, 0.0);

  const double u_p = lp_norm(grid, u, p);
  const double u_1 = lp_norm(grid, u, 1.0);
  const double Ku_p = lp_norm(grid, Ku, p);

  report.pointwise = {lp_norm(grid, Ku, kInfinity), kernel_norm(kernel, report.q) * u_p};
  report.lp_operator = {Ku_p, kernel_norm(kernel, 1.0) * u_p};
  report.lp_from_l1 = {Ku_p, kernel_norm(kernel, p) * u_1};
  report.lp_unit = {Ku_p, u_p};
  report.min_slack = std::min({report.pointwise.slack(), report.lp_operator.slack(),
                               report.lp_from_l1.slack()});
  report.pass = report.min_slack >= -kBoundKTolerance;
  return report;
}

std::vector<double> load_kernel_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io, "cannot open kernel file " + path.string());
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const std::string prefix = "# kernel n=";
    if (line.rfind(prefix, 0) != 0) {
      throw Error(ErrorKind::parse, "kernel file must start with '# kernel n=<nodes>'");
    }
    try {
      n = std::stoul(line.substr(prefix.size()));
    } catch (const std::exception&) {
      throw Error(ErrorKind::parse, "bad node count in kernel header: " + line);
    }
    break;
  }
  if (n == 0) throw Error(ErrorKind::parse, "kernel file has no header or zero nodes");
  std::vector<double> m;
  m.reserve(n * n);
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    std::size_t cols = 0;
    while (std::getline(ss, cell, ',')) {
      m.push_back(parse_double(cell, "kernel entry"));
      ++cols;
    }
    if (cols != n) {
      throw Error(ErrorKind::parse, "kernel row " + std::to_string(rows) + " has " +
                                        std::to_string(cols) + " entries, expected " +
                                        std::to_string(n));
    }
    ++rows;
  }
  if (rows != n) {
    throw Error(ErrorKind::parse,
                "kernel file has " + std::to_string(rows) + " rows, expected " + std::to_string(n));
  }
  return m;
}

void write_kernel_csv(const std::filesystem::path& path, std::span<const double> matrix,
                      std::size_t n) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io, "cannot write kernel file " + path.string());
  out << "# kernel n=" << n << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out << ',';
      out << format_double(matrix[i * n + j]);
    }
    out << '\n';
  }
}

}  // namespace nonlocal
