#include "eqens/curve.hpp"

#include <algorithm>
#include <cmath>

#include "eqens/error.hpp"

namespace eqens {

Curve::Curve(std::vector<double> x, std::vector<double> y, Interpolation interp)
    : x_(std::move(x)), y_(std::move(y)), interp_(interp) {
  if (x_.size() != y_.size() || x_.empty()) {
    throw Error(ErrorKind::OutOfDomain, "Curve: grid and values must be non-empty and match");
  }
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) {
      throw Error(ErrorKind::OutOfDomain, "Curve: grid must be strictly increasing");
    }
  }
}

std::vector<double> Curve::uniform_grid(double lo, double hi, int points) {
  if (points < 2 || !(hi > lo)) {
    throw Error(ErrorKind::GridTooCoarse, "uniform_grid: need >= 2 points on a proper interval");
  }
  std::vector<double> x(static_cast<std::size_t>(points));
  const double h = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) x[i] = lo + h * i;
  x.back() = hi;
  return x;
}

double Curve::operator()(double x) const {
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  const auto i = static_cast<std::size_t>(it - x_.begin()) - 1;
  if (interp_ == Interpolation::Step) return y_[i];
  const double w = (x - x_[i]) / (x_[i + 1] - x_[i]);
  return y_[i] + w * (y_[i + 1] - y_[i]);
}

double Curve::left_limit(double x) const {
  if (interp_ == Interpolation::Linear || x <= x_.front()) return (*this)(x);
  if (x > x_.back()) return y_.back();
  const auto it = std::lower_bound(x_.begin(), x_.end(), x);
  const auto i = static_cast<std::size_t>(it - x_.begin());
  return y_[i - 1];
}

double sup_distance(const Curve& a, const Curve& b, double interval_tol) {
  if (std::abs(a.front() - b.front()) > interval_tol ||
      std::abs(a.back() - b.back()) > interval_tol) {
    throw Error(ErrorKind::IntervalMismatch, "sup_distance: curves live on different intervals");
  }
  std::vector<double> grid;
  grid.reserve(a.size() + b.size());
  std::merge(a.x().begin(), a.x().end(), b.x().begin(), b.x().end(), std::back_inserter(grid));
  double sup = 0.0;
  for (double x : grid) {
    sup = std::max(sup, std::abs(a(x) - b(x)));
    sup = std::max(sup, std::abs(a.left_limit(x) - b.left_limit(x)));
  }
  return sup;
}

}  // namespace eqens
