#pragma once

#include <span>
#include <vector>

#include "eqens/curve.hpp"
#include "eqens/ensemble.hpp"
#include "eqens/profile.hpp"

namespace eqens {

/// psi(u) = #{k in window : k > u, eta_k = 1} for u in [-l-1, l]; a
/// right-continuous non-increasing step function.  cells()[j] is its value on
/// [u, u+1) with u = -l-1+j, j = 0..2l.
class HeightFunction {
 public:
  explicit HeightFunction(const ParticleConfig& config);

  int ell() const noexcept { return ell_; }
  const std::vector<int>& cells() const noexcept { return cells_; }
  /// psi at real u; 0 for u >= l, K for u < -l.
  int operator()(double u) const noexcept;
  /// Integral over [-l-1, l]; equals (l+1) K + M.
  long long area() const noexcept;

 private:
  int ell_;
  std::vector<int> cells_;
};

inline constexpr int kDefaultGridPoints = 1024;

/// x -> psi(l x) / l sampled on a uniform grid of [-1, 1].
Curve scaled_height(const HeightFunction& h, int grid_points = kDefaultGridPoints);

/// The same function exactly, as a step curve with breakpoints k / l.
Curve scaled_height_steps(const HeightFunction& h);

/// psi(x) = int_x^1 beta(y) dy on a uniform grid of [-1, 1].
Curve limit_curve(const ProfileParams& p, int grid_points = kDefaultGridPoints);
double limit_height(double x, const ProfileParams& p) noexcept;

struct MomentStatistic {
  double mean;
  double variance;
  double limit;  // int_{-1}^{1} beta(x) test(x) dx
};

/// Statistic (1/l) sum_k eta_k test(k/l) over samples of one ensemble:
/// sample mean, unbiased variance and the grand-canonical limit value.
MomentStatistic moment_test(std::span<const ParticleConfig> samples, const Curve& test,
                            const ProfileParams& p);

}  // namespace eqens
