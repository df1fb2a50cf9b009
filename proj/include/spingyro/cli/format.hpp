#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace spingyro::cli {

// Fixed 12-significant-digit rendering so identical configs give
// byte-identical output.  -0 collapses to 0; NaN renders as "nan".
inline std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0.0) v = 0.0;  // normalize the sign of zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace spingyro::cli
