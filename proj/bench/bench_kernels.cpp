// Serial reference loops against their OpenMP versions on dense kernels.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "nonlocal/grid.hpp"
#include "nonlocal/kernel.hpp"
#include "nonlocal/kernels.hpp"

namespace {

using namespace nonlocal;

Kernel make_kernel(std::size_t n) {
  const DomainGrid grid = build_grid(1, {{0.0, 1.0}}, {n});
  return build_kernel(KernelSpec::gaussian(0.1), grid, Exec::serial);
}

std::vector<double> field(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(0.37 * static_cast<double>(i));
  return v;
}

template <Exec E>
void BM_Matvec(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Kernel k = make_kernel(n);
  const auto v = field(n);
  std::vector<double> out(n);
  for (auto _ : state) {
    kernels::weighted_matvec(E, k.view(), k.grid().weights(), v, k.tail_mass(), 0.0, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n));
}

template <Exec E>
void BM_InteractionSum(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Kernel k = make_kernel(n);
  const auto f = field(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::interaction_sum(E, k.view(), k.grid().weights(), f));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n));
}

template <Exec E>
void BM_RowNorms(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const Kernel k = make_kernel(n);
  std::vector<double> out(n);
  for (auto _ : state) {
    kernels::row_norms(E, k.view(), k.grid().weights(), 2.0, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(n * n));
}

}  // namespace

BENCHMARK(BM_Matvec<Exec::serial>)->RangeMultiplier(2)->Range(128, 2048);
BENCHMARK(BM_Matvec<Exec::parallel>)->RangeMultiplier(2)->Range(128, 2048);
BENCHMARK(BM_InteractionSum<Exec::serial>)->RangeMultiplier(2)->Range(128, 2048);
BENCHMARK(BM_InteractionSum<Exec::parallel>)->RangeMultiplier(2)->Range(128, 2048);
BENCHMARK(BM_RowNorms<Exec::serial>)->RangeMultiplier(2)->Range(128, 2048);
BENCHMARK(BM_RowNorms<Exec::parallel>)->RangeMultiplier(2)->Range(128, 2048);

BENCHMARK_MAIN();
