#include "nonlocal/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nonlocal/error.hpp"
#include "nonlocal/summation.hpp"

namespace nonlocal {

namespace {

std::vector<double> trapezoid_weights(std::size_t n, double h) {
  std::vector<double> w(n, h);
  w.front() = 0.5 * h;
  w.back() = 0.5 * h;
  return w;
}

}  // namespace

DomainGrid build_grid(int dim, const std::vector<Interval>& bounds,
                      const std::vector<std::size_t>& resolution) {
  if (dim != 1 && dim != 2) {
    throw Error(ErrorKind::dimension_mismatch, "grid dimension must be 1 or 2");
  }
  const auto axes = static_cast<std::size_t>(dim);
  if (bounds.size() != axes || resolution.size() != axes) {
    throw Error(ErrorKind::dimension_mismatch,
                "expected " + std::to_string(dim) + " bounds and resolutions");
  }
  for (std::size_t a = 0; a < axes; ++a) {
    if (!(bounds[a].length() > 0.0) || !std::isfinite(bounds[a].length())) {
      throw Error(ErrorKind::degenerate_domain, "axis " + std::to_string(a) + " has zero volume");
    }
    if (resolution[a] < 2) {
      throw Error(ErrorKind::degenerate_domain, "resolution must be at least 2 per axis");
    }
  }

  DomainGrid grid;
  grid.dim_ = dim;
  grid.bounds_ = bounds;
  grid.resolution_ = resolution;

  std::vector<std::vector<double>> coords(axes);
  std::vector<std::vector<double>> axis_weights(axes);
  for (std::size_t a = 0; a < axes; ++a) {
    const std::size_t n = resolution[a];
    const double h = bounds[a].length() / static_cast<double>(n - 1);
    coords[a].resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      coords[a][i] = (i + 1 == n) ? bounds[a].hi : bounds[a].lo + static_cast<double>(i) * h;
    }
    axis_weights[a] = trapezoid_weights(n, h);
  }

  if (dim == 1) {
    for (std::size_t i = 0; i < resolution[0]; ++i) {
      grid.nodes_.push_back({coords[0][i], 0.0});
      grid.weights_.push_back(axis_weights[0][i]);
    }
    grid.measure_ = bounds[0].length();
  } else {
    for (std::size_t i = 0; i < resolution[0]; ++i) {
      for (std::size_t j = 0; j < resolution[1]; ++j) {
        grid.nodes_.push_back({coords[0][i], coords[1][j]});
        grid.weights_.push_back(axis_weights[0][i] * axis_weights[1][j]);
      }
    }
    grid.measure_ = bounds[0].length() * bounds[1].length();
  }
  return grid;
}

void require_exponent(double p) {
  if (std::isnan(p) || p < 1.0) {
    throw Error(ErrorKind::invalid_exponent, "exponent must satisfy 1 <= p <= inf, got " +
                                                 std::to_string(p));
  }
}

void require_same_size(const DomainGrid& grid, std::span<const double> u) {
  if (u.size() != grid.size()) {
    throw Error(ErrorKind::dimension_mismatch, "field has " + std::to_string(u.size()) +
                                                   " values, grid has " +
                                                   std::to_string(grid.size()) + " nodes");
  }
}

double conjugate_exponent(double p) {
  require_exponent(p);
  if (p == 1.0) return kInfinity;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

double lp_norm(const DomainGrid& grid, std::span<const double> u, double p) {
  require_exponent(p);
  require_same_size(grid, u);
  if (std::isinf(p)) {
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(v));
    return m;
  }
  const auto w = grid.weights();
  if (p == 1.0) {
    return pairwise_sum(0, u.size(), [&](std::size_t i) { return w[i] * std::abs(u[i]); });
  }
  if (p == 2.0) {
    return std::sqrt(pairwise_sum(0, u.size(), [&](std::size_t i) { return w[i] * u[i] * u[i]; }));
  }
  // Scale by the max to keep |u|^p representable for large p.
  double scale = 0.0;
  for (double v : u) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return 0.0;
  const double s = pairwise_sum(
      0, u.size(), [&](std::size_t i) { return w[i] * std::pow(std::abs(u[i]) / scale, p); });
  return scale * std::pow(s, 1.0 / p);
}

double integrate_field(const DomainGrid& grid, std::span<const double> u) {
  require_same_size(grid, u);
  const auto w = grid.weights();
  return pairwise_sum(0, u.size(), [&](std::size_t i) { return w[i] * u[i]; });
}

}  // namespace nonlocal
