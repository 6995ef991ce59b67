#pragma once

// Dense inner loops shared by the operator, the dynamics and the Lyapunov
// functional. Each loop has a serial reference and an OpenMP version. Both
// accumulate every row with the same pairwise order, so they agree bit for bit
// regardless of thread count.

#include <cstddef>
#include <span>

#include "nonlocal/parallel.hpp"
#include "nonlocal/summation.hpp"

namespace nonlocal::kernels {

/// Row-major n x n matrix view.
struct DenseView {
  std::span<const double> data;
  std::size_t n = 0;

  std::span<const double> row(std::size_t i) const { return data.subspan(i * n, n); }
};

inline double weighted_row_dot(std::span<const double> row, std::span<const double> w,
                               std::span<const double> v) {
  return pairwise_sum(0, row.size(), [&](std::size_t j) { return w[j] * row[j] * v[j]; });
}

inline double weighted_row_spread(std::span<const double> row, std::span<const double> w,
                                  std::span<const double> f, double fi) {
  return pairwise_sum(0, row.size(), [&](std::size_t j) {
    const double d = fi - f[j];
    return w[j] * row[j] * d * d;
  });
}

namespace serial {

// out_i = sum_j w_j J_ij v_j + exterior * tail_i
void weighted_matvec(DenseView J, std::span<const double> w, std::span<const double> v,
                     std::span<const double> tail, double exterior, std::span<double> out);

// sum_i w_i sum_j w_j J_ij (f_i - f_j)^2
double interaction_sum(DenseView J, std::span<const double> w, std::span<const double> f);

// out_i = (sum_j w_j |J_ij|^r)^(1/r), or max_j |J_ij| for r = infinity
void row_norms(DenseView J, std::span<const double> w, double r, std::span<double> out);

}  // namespace serial

namespace omp {

void weighted_matvec(DenseView J, std::span<const double> w, std::span<const double> v,
                     std::span<const double> tail, double exterior, std::span<double> out);

double interaction_sum(DenseView J, std::span<const double> w, std::span<const double> f);

void row_norms(DenseView J, std::span<const double> w, double r, std::span<double> out);

}  // namespace omp

inline void weighted_matvec(Exec exec, DenseView J, std::span<const double> w,
                            std::span<const double> v, std::span<const double> tail,
                            double exterior, std::span<double> out) {
  if (exec == Exec::serial) {
    serial::weighted_matvec(J, w, v, tail, exterior, out);
  } else {
    omp::weighted_matvec(J, w, v, tail, exterior, out);
  }
}

inline double interaction_sum(Exec exec, DenseView J, std::span<const double> w,
                              std::span<const double> f) {
  return exec == Exec::serial ? serial::interaction_sum(J, w, f) : omp::interaction_sum(J, w, f);
}

inline void row_norms(Exec exec, DenseView J, std::span<const double> w, double r,
                      std::span<double> out) {
  if (exec == Exec::serial) {
    serial::row_norms(J, w, r, out);
  } else {
    omp::row_norms(J, w, r, out);
  }
}

}  // namespace nonlocal::kernels
