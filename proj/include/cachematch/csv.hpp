#pragma once

#include <cstdio>
#include <string>

namespace cachematch {

/// 12 significant digits, `%.12g`.
inline std::string csv_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace cachematch
