#include "nonlocal/io_format.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "nonlocal/error.hpp"

namespace nonlocal {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  (void)ec;
  return std::string(buf.data(), ptr);
}

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

double parse_double(std::string_view text, std::string_view what) {
  const std::string_view t = trim(text);
  if (t == "inf" || t == "infinity") return HUGE_VAL;
  double value = 0.0;
  const char* begin = t.data();
  if (!t.empty() && t.front() == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, t.data() + t.size(), value);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw Error(ErrorKind::parse,
                "cannot parse " + std::string(what) + " from '" + std::string(t) + "'");
  }
  return value;
}

}  // namespace nonlocal
