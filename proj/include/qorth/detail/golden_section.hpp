#pragma once

#include <cmath>
#include <utility>

namespace qorth::detail {

struct GoldenSectionResult {
  double x = 0.0;
  double value = 0.0;
};

/// Minimizes f on [lo, hi] assuming a single local minimum inside. Stops when
/// the bracket is narrower than `width` or after `max_iterations` steps.
template <typename F>
GoldenSectionResult golden_section_minimize(F&& f, double lo, double hi, double width,
                                            int max_iterations = 300) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  if (hi < lo) std::swap(lo, hi);
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < max_iterations && (hi - lo) > width; ++i) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  const double x = 0.5 * (lo + hi);
  const double fx = f(x);
  // the midpoint can be worse than the best interior probe on a V-shaped floor
  if (fc <= fx && fc <= fd) return {c, fc};
  if (fd < fx) return {d, fd};
  return {x, fx};
}

}  // namespace qorth::detail
