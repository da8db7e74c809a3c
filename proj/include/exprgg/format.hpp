#pragma once

#include <cstdio>
#include <string>

namespace exprgg::detail {

// 17 significant digits, enough to round-trip any IEEE-754 double.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace exprgg::detail
