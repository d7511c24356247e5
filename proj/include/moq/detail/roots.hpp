#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace moq::detail {

struct RootResult {
  double x;
  double residual;
  std::size_t iterations;
  bool converged;
};

// Solves f(x) = target for f non-decreasing on [lo, hi] with f(lo) <= target <= f(hi).
// Illinois false position, falling back to bisection whenever the secant step
// fails to shrink the bracket by half.
template <class F>
RootResult solve_increasing(F&& f, double lo, double hi, double target, double residual_tol,
                            std::size_t max_iterations = 200) {
  double flo = f(lo) - target;
  double fhi = f(hi) - target;
  if (flo >= 0.0) return {lo, flo, 0, std::abs(flo) <= residual_tol};
  if (fhi <= 0.0) return {hi, fhi, 0, std::abs(fhi) <= residual_tol};

  double best = lo, best_res = flo;
  int side = 0;
  for (std::size_t it = 1; it <= max_iterations; ++it) {
    const double width = hi - lo;
    double x = lo - flo * width / (fhi - flo);
    if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
    double fx = f(x) - target;
    if (std::abs(fx) < std::abs(best_res)) {
      best = x;
      best_res = fx;
    }
    if (fx == 0.0) return {x, 0.0, it, true};
    if (fx < 0.0) {
      lo = x;
      flo = fx;
      if (side == -1) fhi *= 0.5;
      side = -1;
    } else {
      hi = x;
      fhi = fx;
      if (side == 1) flo *= 0.5;
      side = 1;
    }
    if (hi - lo > 0.5 * width) {
      const double mid = 0.5 * (lo + hi);
      const double fm = f(mid) - target;
      if (std::abs(fm) < std::abs(best_res)) {
        best = mid;
        best_res = fm;
      }
      if (fm == 0.0) return {mid, 0.0, it, true};
      if (fm < 0.0) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
        fhi = fm;
      }
      side = 0;
    }
    if (hi - lo <= 4.0 * 2.220446049250313e-16 * std::max(std::abs(lo), std::abs(hi)) ||
        hi - lo <= 1e-300) {
      return {best, best_res, it, std::abs(best_res) <= residual_tol};
    }
  }
  return {best, best_res, max_iterations, std::abs(best_res) <= residual_tol};
}

}  // namespace moq::detail
