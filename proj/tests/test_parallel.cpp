#include <gtest/gtest.h>

#include <cstdlib>
#include <cstring>

#include "nonlocal/kernel.hpp"
#include "nonlocal/kernels.hpp"
#include "nonlocal/parallel.hpp"
#include "oracles.hpp"

using namespace nonlocal;

namespace {

struct ThreadCapGuard {
  int saved = max_threads();
  ~ThreadCapGuard() { set_thread_cap(saved); }
};

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

class SerialVsParallel : public ::testing::TestWithParam<int> {};

TEST_P(SerialVsParallel, BitwiseAgreement) {
  ThreadCapGuard guard;
  set_thread_cap(GetParam());
  const auto grid = build_grid(2, {{0, 1}, {0, 1}}, {23, 19});
  const Kernel serial_k = build_kernel(KernelSpec::gaussian(0.15), grid, Exec::serial);
  const Kernel omp_k = build_kernel(KernelSpec::gaussian(0.15), grid, Exec::parallel);
  ASSERT_TRUE(bitwise_equal({serial_k.matrix().begin(), serial_k.matrix().end()},
                            {omp_k.matrix().begin(), omp_k.matrix().end()}));
  ASSERT_TRUE(bitwise_equal({serial_k.tail_mass().begin(), serial_k.tail_mass().end()},
                            {omp_k.tail_mass().begin(), omp_k.tail_mass().end()}));

  const auto v = oracle::random_field(grid.size(), 3, -1, 1);
  EXPECT_TRUE(bitwise_equal(apply_K(serial_k, v, 0.3, Exec::serial),
                            apply_K(serial_k, v, 0.3, Exec::parallel)));
  for (double r : {1.0, 2.0, 3.5, kInfinity}) {
    const double a = kernel_norm(serial_k, r, Exec::serial);
    const double b = kernel_norm(serial_k, r, Exec::parallel);
    EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0) << r;
  }
  const auto w = grid.weights();
  const double s = kernels::serial::interaction_sum(serial_k.view(), w, v);
  const double p = kernels::omp::interaction_sum(serial_k.view(), w, v);
  EXPECT_EQ(std::memcmp(&s, &p, sizeof s), 0);
}

INSTANTIATE_TEST_SUITE_P(Threads, SerialVsParallel, ::testing::Values(1, 2, 3, 4, 7));

TEST(ThreadCap, ParsesEnvironment) {
  ThreadCapGuard guard;
  ::setenv(kThreadEnvVar, "3", 1);
  EXPECT_EQ(thread_cap_from_env(), 3);
  apply_env_thread_cap();
  EXPECT_EQ(max_threads(), 3);
  for (const char* bad : {"", "0", "-2", "abc", "4x"}) {
    ::setenv(kThreadEnvVar, bad, 1);
    EXPECT_FALSE(thread_cap_from_env().has_value()) << bad;
  }
  ::unsetenv(kThreadEnvVar);
  EXPECT_FALSE(thread_cap_from_env().has_value());
}
