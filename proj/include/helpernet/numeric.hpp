#pragma once

#include <cmath>
#include <functional>

namespace helpernet {

/// Golden-section search for the maximizer of a unimodal f on [lo, hi].
/// Returns the argmax; endpoints are considered too.
inline double golden_section_max(const std::function<double(double)>& f, double lo, double hi, int iterations = 80) {
  if (!(hi > lo)) return lo;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc < fd) {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    } else {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    }
  }
  double best = 0.5 * (a + b);
  double best_value = f(best);
  for (double x : {lo, hi}) {
    const double v = f(x);
    if (v > best_value) {
      best = x;
      best_value = v;
    }
  }
  return best;
}

}  // namespace helpernet
