#include <vector>

#include "kernels_detail.hpp"
#include "nonlocal/kernels.hpp"

namespace nonlocal::kernels::serial {

void weighted_matvec(DenseView J, std::span<const double> w, std::span<const double> v,
                     std::span<const double> tail, double exterior, std::span<double> out) {
  for (std::size_t i = 0; i < J.n; ++i) {
    out[i] = weighted_row_dot(J.row(i), w, v) + exterior * tail[i];
  }
}

double interaction_sum(DenseView J, std::span<const double> w, std::span<const double> f) {
  std::vector<double> partial(J.n);
  for (std::size_t i = 0; i < J.n; ++i) {
    partial[i] = w[i] * weighted_row_spread(J.row(i), w, f, f[i]);
  }
  return pairwise_sum(partial);
}

void row_norms(DenseView J, std::span<const double> w, double r, std::span<double> out) {
  for (std::size_t i = 0; i < J.n; ++i) out[i] = detail::row_norm(J.row(i), w, r);
}

}  // namespace nonlocal::kernels::serial
