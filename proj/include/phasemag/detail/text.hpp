#pragma once

#include <charconv>
#include <string>
#include <string_view>
#include <system_error>

namespace phasemag::detail {

/// Shortest round-trip decimal, '.' separator, independent of locale.
inline std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  std::string s(buf, end);
  if (s == "-0") s = "0";
  return s;
}

inline bool parse_number(std::string_view text, double& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

inline bool parse_unsigned(std::string_view text, std::size_t& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last && !text.empty();
}

}  // namespace phasemag::detail
