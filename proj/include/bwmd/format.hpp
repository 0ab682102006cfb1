#pragma once

#include <cstdio>
#include <string>

namespace bwmd {

/// Floating-point rendering used for all emitted numbers: 12 significant
/// digits, shortest form.
inline std::string format_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace bwmd
