#pragma once

#include <vector>

namespace eqens {

enum class Interpolation {
  Linear,
  /// Right-continuous step: value y[i] on [x[i], x[i+1]).
  Step,
};

/// A real function sampled on a strictly increasing grid.
class Curve {
 public:
  Curve(std::vector<double> x, std::vector<double> y,
        Interpolation interp = Interpolation::Linear);

  static Curve uniform(double lo, double hi, int points, Interpolation interp,
                       const auto& fn) {
    std::vector<double> x = uniform_grid(lo, hi, points);
    std::vector<double> y;
    y.reserve(x.size());
    for (double xi : x) y.push_back(fn(xi));
    return Curve(std::move(x), std::move(y), interp);
  }

  const std::vector<double>& x() const noexcept { return x_; }
  const std::vector<double>& y() const noexcept { return y_; }
  Interpolation interpolation() const noexcept { return interp_; }
  std::size_t size() const noexcept { return x_.size(); }
  double front() const noexcept { return x_.front(); }
  double back() const noexcept { return x_.back(); }

  double operator()(double x) const;
  /// Limit from the left; equals operator() for linear curves.
  double left_limit(double x) const;

  static std::vector<double> uniform_grid(double lo, double hi, int points);

 private:
  std::vector<double> x_;
  std::vector<double> y_;
  Interpolation interp_;
};

/// Sup of |a - b| over the union of both grids, including left limits at
/// step breakpoints.  Endpoints must agree to `interval_tol`, otherwise
/// Error(IntervalMismatch).
double sup_distance(const Curve& a, const Curve& b, double interval_tol = 1e-9);

}  // namespace eqens
