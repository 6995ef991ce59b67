#pragma once

#include <cstddef>
#include <span>

namespace nonlocal {

inline constexpr std::size_t kPairwiseBlock = 16;

// Pairwise (cascade) summation of term(i) for i in [first, last). The split
// points depend only on the range, so the result is bit-reproducible.
template <class Term>
double pairwise_sum(std::size_t first, std::size_t last, const Term& term) {
  const std::size_t n = last - first;
  if (n <= kPairwiseBlock) {
    double s = 0.0;
    for (std::size_t i = first; i < last; ++i) s += term(i);
    return s;
  }
  const std::size_t mid = first + n / 2;
  return pairwise_sum(first, mid, term) + pairwise_sum(mid, last, term);
}

inline double pairwise_sum(std::span<const double> values) {
  return pairwise_sum(0, values.size(), [&](std::size_t i) { return values[i]; });
}

}  // namespace nonlocal
