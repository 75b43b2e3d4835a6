#pragma once

#include <algorithm>
#include <utility>

namespace mecsim::detail {

// Golden-section search for the minimum of a 1-D function on [lo, hi]; the
// right endpoint is also tried since conditional-gradient steps often land
// on the vertex.
template <typename F>
std::pair<double, double> golden_section(F&& fn, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = fn(c);
  double fd = fn(d);
  for (int i = 0; i < 60 && b - a > 1e-12; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = fn(d);
    }
  }
  const double end = fn(hi);
  if (end <= std::min(fc, fd)) return {hi, end};
  return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace mecsim::detail
