#pragma once

#include <algorithm>
#include <cmath>
#include <span>

#include "nonlocal/kernels.hpp"

namespace nonlocal::kernels::detail {

inline double row_norm(std::span<const double> row, std::span<const double> w, double r) {
  if (std::isinf(r)) {
    double m = 0.0;
    for (double v : row) m = std::max(m, std::abs(v));
    return m;
  }
  if (r == 1.0) {
    return pairwise_sum(0, row.size(), [&](std::size_t j) { return w[j] * std::abs(row[j]); });
  }
  const double s = pairwise_sum(
      0, row.size(), [&](std::size_t j) { return w[j] * std::pow(std::abs(row[j]), r); });
  return std::pow(s, 1.0 / r);
}

}  // namespace nonlocal::kernels::detail
