#pragma once

#include <charconv>
#include <string>

namespace relieforge::detail {

// Shortest decimal that parses back to the same binary64. With
// `force_decimal`, integral values gain a trailing ".0".
inline std::string format_number(double v, bool force_decimal = false) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, res.ptr);
  if (force_decimal && s.find_first_of(".eni") == std::string::npos) s += ".0";
  return s;
}

}  // namespace relieforge::detail
