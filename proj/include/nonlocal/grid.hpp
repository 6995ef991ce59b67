#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace nonlocal {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Interval {
  double lo = 0.0;
  double hi = 1.0;

  double length() const noexcept { return hi - lo; }
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

using Point = std::array<double, 2>;

// Uniform tensor-product grid on a box in R^1 or R^2 with trapezoidal
// weights. Nodes are ordered lexicographically (x slowest).
class DomainGrid {
 public:
  int dim() const noexcept { return dim_; }
  const std::vector<Interval>& bounds() const noexcept { return bounds_; }
  const std::vector<std::size_t>& resolution() const noexcept { return resolution_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const Point& node(std::size_t i) const { return nodes_[i]; }
  std::span<const Point> nodes() const noexcept { return nodes_; }
  std::span<const double> weights() const noexcept { return weights_; }
  double measure() const noexcept { return measure_; }

  double distance_squared(std::size_t i, std::size_t j) const noexcept {
    const double dx = nodes_[i][0] - nodes_[j][0];
    const double dy = nodes_[i][1] - nodes_[j][1];
    return dx * dx + dy * dy;
  }

  friend DomainGrid build_grid(int dim, const std::vector<Interval>& bounds,
                               const std::vector<std::size_t>& resolution);

 private:
  int dim_ = 1;
  std::vector<Interval> bounds_;
  std::vector<std::size_t> resolution_;
  std::vector<Point> nodes_;
  std::vector<double> weights_;
  double measure_ = 0.0;
};

/// A discrete state on a grid. Values outside the domain are zero by
/// convention and never stored.
struct Field {
  std::vector<double> values;
  double time = 0.0;
};

DomainGrid build_grid(int dim, const std::vector<Interval>& bounds,
                      const std::vector<std::size_t>& resolution);

/// (sum_i w_i |u_i|^p)^(1/p); p = infinity gives max_i |u_i|.
double lp_norm(const DomainGrid& grid, std::span<const double> u, double p);

double integrate_field(const DomainGrid& grid, std::span<const double> u);

/// q with 1/p + 1/q = 1 (1 <-> infinity).
double conjugate_exponent(double p);

void require_exponent(double p);

void require_same_size(const DomainGrid& grid, std::span<const double> u);

}  // namespace nonlocal
