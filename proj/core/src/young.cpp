#include "eqens/young.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "eqens/error.hpp"

namespace eqens {

HeightFunction::HeightFunction(const ParticleConfig& config) : ell_(config.ell) {
  const int n = config.sites();
  cells_.assign(static_cast<std::size_t>(n), 0);
  // cell j covers [u, u+1) with u = -l-1+j; psi(u) counts sites k >= u+1,
  // i.e. occupancy indices >= j
  int suffix = 0;
  for (int j = n - 1; j >= 0; --j) {
    suffix += config.occupancy[j];
    cells_[j] = suffix;
  }
}

int HeightFunction::operator()(double u) const noexcept {
  const double cell = std::floor(u) + ell_ + 1;
  if (cell < 0) return cells_.front();
  if (cell >= static_cast<double>(cells_.size())) return 0;
  return cells_[static_cast<std::size_t>(cell)];
}

long long HeightFunction::area() const noexcept {
  long long sum = 0;
  for (int c : cells_) sum += c;
  return sum;
}

Curve scaled_height(const HeightFunction& h, int grid_points) {
  const double ell = h.ell();
  return Curve::uniform(-1.0, 1.0, grid_points, Interpolation::Step,
                        [&](double x) { return h(ell * x) / ell; });
}

Curve scaled_height_steps(const HeightFunction& h) {
  const int ell = h.ell();
  std::vector<double> x, y;
  x.reserve(static_cast<std::size_t>(2 * ell + 1));
  y.reserve(x.capacity());
  for (int u = -ell; u <= ell; ++u) {
    x.push_back(static_cast<double>(u) / ell);
    y.push_back(static_cast<double>(h(u)) / ell);
  }
  return Curve(std::move(x), std::move(y), Interpolation::Step);
}

double limit_height(double x, const ProfileParams& p) noexcept {
  const double b = p.b();
  if (b == 0.0) return p.a() * (1.0 - x);
  const double span = b * (1.0 - x);
  if (std::abs(span) > 700.0) return (log_g(1.0, p) - log_g(x, p)) / b;
  // g(1)/g(x) = 1 + beta(x) (e^{b(1-x)} - 1)
  if (b > 0.0) return std::log1p(beta(x, p) * std::expm1(span)) / b;
  // same ratio with e^{b(1-x)} factored out, so the log1p argument is >= 0
  const double hole = logistic(-(b * x + p.log_odds()));
  return (1.0 - x) + std::log1p(hole * std::expm1(-span)) / b;
}

Curve limit_curve(const ProfileParams& p, int grid_points) {
  return Curve::uniform(-1.0, 1.0, grid_points, Interpolation::Linear,
                        [&](double x) { return limit_height(x, p); });
}

MomentStatistic moment_test(std::span<const ParticleConfig> samples, const Curve& test,
                            const ProfileParams& p) {
  if (samples.empty()) throw Error(ErrorKind::OutOfDomain, "moment_test: no samples");
  const int ell = samples.front().ell;
  std::vector<double> weight(static_cast<std::size_t>(2 * ell + 1));
  for (int k = -ell; k <= ell; ++k) weight[k + ell] = test(static_cast<double>(k) / ell);

  double mean = 0.0, m2 = 0.0;
  std::size_t count = 0;
  for (const auto& s : samples) {
    if (s.ell != ell) throw Error(ErrorKind::OutOfDomain, "moment_test: mixed window sizes");
    double stat = 0.0;
    for (std::size_t i = 0; i < weight.size(); ++i) stat += s.occupancy[i] * weight[i];
    stat /= ell;
    ++count;
    const double delta = stat - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (stat - mean);
  }
  const double variance = count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;

  // piecewise Gauss-Legendre over the test curve's cells
  using Rule = boost::math::quadrature::gauss<double, 10>;
  double limit = 0.0;
  const auto& x = test.x();
  const double lo = std::max(-1.0, x.front());
  const double hi = std::min(1.0, x.back());
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = std::max(lo, x[i]);
    const double b = std::min(hi, x[i + 1]);
    if (!(b > a)) continue;
    const double mid = 0.5 * (x[i] + x[i + 1]);
    limit += Rule::integrate(
        [&](double t) {
          const double tv = test.interpolation() == Interpolation::Step ? test(mid) : test(t);
          return beta(t, p) * tv;
        },
        a, b);
  }
  return {mean, variance, limit};
}

}  // namespace eqens
