#pragma once

#include <cmath>
#include <tuple>
#include <utility>

namespace eqens {

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Newton iteration kept inside a sign-changing bracket; any step that leaves
// the bracket, or fails to halve |f| relative to the previous step, is
// replaced by bisection.  `fdf(x)` returns the pair {f(x), f'(x)}.
// Requires f(lo) and f(hi) of opposite sign (or one of them zero).
template <class FDF>
RootResult safeguarded_newton(FDF&& fdf, double lo, double hi, double f_tol,
                              int max_iter) {
  auto [f_lo, d_lo] = fdf(lo);
  auto [f_hi, d_hi] = fdf(hi);
  (void)d_lo;
  (void)d_hi;
  if (f_lo == 0.0) return {lo, 0.0, 0, true};
  if (f_hi == 0.0) return {hi, 0.0, 0, true};
  // orient so that f(neg) < 0 < f(pos)
  double neg = f_lo < 0.0 ? lo : hi;
  double pos = f_lo < 0.0 ? hi : lo;

  double x = 0.5 * (lo + hi);
  double step_old = std::abs(hi - lo);
  double step = step_old;
  auto [fx, dfx] = fdf(x);
  for (int it = 1; it <= max_iter; ++it) {
    if (std::abs(fx) <= f_tol) return {x, fx, it, true};
    if (fx < 0.0) neg = x; else pos = x;

    const bool newton_leaves = ((x - pos) * dfx - fx) * ((x - neg) * dfx - fx) >= 0.0;
    const bool newton_slow = std::abs(2.0 * fx) > std::abs(step_old * dfx);
    step_old = step;
    double next;
    if (newton_leaves || newton_slow || dfx == 0.0) {
      next = 0.5 * (neg + pos);
    } else {
      next = x - fx / dfx;
    }
    step = std::abs(next - x);
    if (next == x || neg == pos || std::nextafter(neg, pos) == pos) {
      return {x, fx, it, std::abs(fx) <= f_tol};
    }
    x = next;
    std::tie(fx, dfx) = fdf(x);
  }
  return {x, fx, max_iter, std::abs(fx) <= f_tol};
}

}  // namespace eqens
