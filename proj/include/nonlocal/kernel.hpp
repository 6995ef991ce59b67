#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "nonlocal/grid.hpp"
#include "nonlocal/kernels.hpp"
#include "nonlocal/parallel.hpp"

namespace nonlocal {

enum class KernelFamily { gaussian, tophat, uniform, custom };

const char* to_string(KernelFamily family) noexcept;
KernelFamily kernel_family_from_string(const std::string& name);

/// Describes a symmetric nonnegative kernel J(x, y) with unit total mass over
/// the whole space.
struct KernelSpec {
  KernelFamily family = KernelFamily::gaussian;
  double width = 0.1;          // gaussian standard deviation
  double radius = 0.1;         // tophat support radius
  std::vector<double> matrix;  // custom: row-major J(x_i, x_j)

  static KernelSpec gaussian(double sigma);
  static KernelSpec tophat(double radius);
  static KernelSpec uniform();
  static KernelSpec custom(std::vector<double> matrix);
};

/// Discretized kernel on a grid: the (symmetrized) matrix J(x_i, x_j), the
/// quadrature mass of each row inside the domain and the mass that falls
/// outside it.
class Kernel {
 public:
  const DomainGrid& grid() const noexcept { return grid_; }
  const KernelSpec& spec() const noexcept { return spec_; }
  std::size_t size() const noexcept { return grid_.size(); }
  double operator()(std::size_t i, std::size_t j) const { return matrix_[i * size() + j]; }
  std::span<const double> matrix() const noexcept { return matrix_; }
  std::span<const double> row(std::size_t i) const {
    return std::span<const double>(matrix_).subspan(i * size(), size());
  }
  kernels::DenseView view() const noexcept { return {matrix_, size()}; }
  std::span<const double> row_mass() const noexcept { return row_mass_; }
  std::span<const double> tail_mass() const noexcept { return tail_mass_; }
  double max_entry() const noexcept { return norm_inf_; }

  friend Kernel build_kernel(const KernelSpec& spec, const DomainGrid& grid, Exec exec);
  friend double kernel_norm(const Kernel& kernel, double r, Exec exec);

 private:
  DomainGrid grid_;
  KernelSpec spec_;
  std::vector<double> matrix_;
  std::vector<double> row_mass_;
  std::vector<double> tail_mass_;
  double norm_1_ = 0.0;
  double norm_2_ = 0.0;
  double norm_inf_ = 0.0;
};

/// Custom matrices must be symmetric to this relative tolerance.
inline constexpr double kCustomSymmetryTolerance = 1e-8;

Kernel build_kernel(const KernelSpec& spec, const DomainGrid& grid, Exec exec = Exec::parallel);

/// (K v)_i = sum_j w_j J(x_i, x_j) v_j + exterior_value * tail_mass_i
std::vector<double> apply_K(const Kernel& kernel, std::span<const double> v,
                            double exterior_value, Exec exec = Exec::parallel);
void apply_K(const Kernel& kernel, std::span<const double> v, double exterior_value,
             std::span<double> out, Exec exec = Exec::parallel);

/// sup over nodes of the discrete L^r(Omega) norm of J(x_i, .).
double kernel_norm(const Kernel& kernel, double r, Exec exec = Exec::parallel);

struct InequalityCheck {
  double lhs = 0.0;
  double rhs = 0.0;

  double slack() const noexcept { return rhs - lhs; }
};

inline constexpr double kBoundKTolerance = 1e-10;

struct BoundKReport {
  double p = 2.0;
  double q = 2.0;
  InequalityCheck pointwise;    // max_i |Ku_i| <= ||J||_q ||u||_p
  InequalityCheck lp_operator;  // ||Ku||_p <= ||J||_1 ||u||_p
  InequalityCheck lp_from_l1;   // ||Ku||_p <= ||J||_p ||u||_1
  InequalityCheck lp_unit;      // ||Ku||_p <= ||u||_p, reported but not gating
  double min_slack = 0.0;       // over the three gating inequalities
  bool pass = true;
};

/// Evaluates both sides of the three operator estimates with exterior value 0.
BoundKReport verify_boundK(const Kernel& kernel, std::span<const double> u, double p);

/// Reads a row-major matrix written as a "# kernel n=<nodes>" header followed
/// by n comma-separated rows.
std::vector<double> load_kernel_csv(const std::filesystem::path& path);
void write_kernel_csv(const std::filesystem::path& path, std::span<const double> matrix,
                      std::size_t n);

}  // namespace nonlocal
