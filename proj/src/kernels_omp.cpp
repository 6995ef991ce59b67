#include <cstdint>
#include <vector>

#include "kernels_detail.hpp"
#include "nonlocal/kernels.hpp"

namespace nonlocal::kernels::omp {

// Rows are independent; each thread reproduces the serial per-row sum.

void weighted_matvec(DenseView J, std::span<const double> w, std::span<const double> v,
                     std::span<const double> tail, double exterior, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(J.n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = weighted_row_dot(J.row(k), w, v) + exterior * tail[k];
  }
}

double interaction_sum(DenseView J, std::span<const double> w, std::span<const double> f) {
  std::vector<double> partial(J.n);
  const auto n = static_cast<std::int64_t>(J.n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    partial[k] = w[k] * weighted_row_spread(J.row(k), w, f, f[k]);
  }
  return pairwise_sum(partial);
}

void row_norms(DenseView J, std::span<const double> w, double r, std::span<double> out) {
  const auto n = static_cast<std::int64_t>(J.n);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = detail::row_norm(J.row(k), w, r);
  }
}

}  // namespace nonlocal::kernels::omp
