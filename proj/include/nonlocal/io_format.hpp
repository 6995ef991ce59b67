#pragma once

#include <string>
#include <string_view>

namespace nonlocal {

/// Shortest decimal form that round-trips to the same double.
std::string format_double(double value);

/// Strict decimal parse of the whole (trimmed) string; `what` names the value
/// in the error message.
double parse_double(std::string_view text, std::string_view what);

std::string_view trim(std::string_view text);

}  // namespace nonlocal
