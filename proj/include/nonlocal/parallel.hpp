#pragma once

#include <optional>

namespace nonlocal {

enum class Exec { serial, parallel };

inline constexpr const char* kThreadEnvVar = "NONLOCAL_FIELD_THREADS";

/// Threads OpenMP regions will use.
int max_threads();

void set_thread_cap(int threads);

/// Parses NONLOCAL_FIELD_THREADS; empty when unset or not a positive integer.
std::optional<int> thread_cap_from_env();

/// Applies thread_cap_from_env() if present.
void apply_env_thread_cap();

}  // namespace nonlocal
