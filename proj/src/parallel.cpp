#include "nonlocal/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace nonlocal {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_thread_cap(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

std::optional<int> thread_cap_from_env() {
  const char* raw = std::getenv(kThreadEnvVar);
  if (raw == nullptr) return std::nullopt;
  int value = 0;
  const char* end = raw + std::strlen(raw);
  auto [ptr, ec] = std::from_chars(raw, end, value);
  if (ec != std::errc{} || ptr != end || value <= 0) return std::nullopt;
  return value;
}

void apply_env_thread_cap() {
  if (auto cap = thread_cap_from_env()) set_thread_cap(*cap);
}

}  // namespace nonlocal
