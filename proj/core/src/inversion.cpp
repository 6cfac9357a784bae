#include "eqens/inversion.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "eqens/error.hpp"
#include "eqens/roots.hpp"

namespace eqens {
namespace {

double log_abs_expm1(double x) {
  if (x > 1.0) return x + std::log1p(-std::exp(-x));
  if (x < -1.0) return std::log1p(-std::exp(x));
  return std::log(std::abs(std::expm1(x)));
}

// G(a(b; rho), b) - m and its total derivative in b.
std::pair<double, double> reduced_residual(double b, double rho, double m) {
  const auto p = ProfileParams::from_log_odds(log_odds_of_b_rho(b, rho), b);
  const auto j = forward_jacobian(p);
  const double slope = j.dG_db - j.dG_dlogodds * j.dF_db / j.dF_dlogodds;
  return {profile_G(p) - m, slope};
}

}  // namespace

double log_odds_of_b_rho(double b, double rho) {
  if (b == 0.0) return std::log(rho) - std::log1p(-rho);
  return log_abs_expm1(2.0 * b * rho) - log_abs_expm1(b * (2.0 - 2.0 * rho)) -
         b * (2.0 * rho - 1.0);
}

double a_of_b_rho(double b, double rho) { return logistic(log_odds_of_b_rho(b, rho)); }

InversionResult invert(const MacroState& target, const InversionOptions& opts) {
  const double rho = target.rho;
  const double m = target.m;
  const double half_v = 0.5 * target.v();
  if (!(rho > 0.0 && rho < 1.0) || !std::isfinite(m) ||
      !(std::abs(m) <= (1.0 - opts.boundary_margin) * half_v)) {
    std::ostringstream os;
    os << "invert: (rho, m) = (" << rho << ", " << m
       << ") outside the admissible domain |m| < rho(1-rho)/2 = " << half_v;
    throw Error(ErrorKind::OutOfDomain, os.str());
  }

  auto fdf = [&](double b) { return reduced_residual(b, rho, m); };

  double b = 0.0;
  int iterations = 0;
  if (m != 0.0) {
    // The reduced residual is increasing in b and equals -m at b = 0.
    const double dir = m > 0.0 ? 1.0 : -1.0;
    double edge = dir;
    while (dir * fdf(edge).first < 0.0) {
      edge *= 2.0;
      ++iterations;
      if (std::abs(edge) > opts.max_abs_b) {
        throw Error(ErrorKind::OutOfDomain,
                    "invert: tilt |b| exceeds the bracketing cap; target too close to the boundary");
      }
    }
    const auto root = safeguarded_newton(fdf, 0.0, edge, opts.tol, opts.max_iterations);
    iterations += root.iterations;
    if (!root.converged) {
      std::ostringstream os;
      os << "invert: no convergence after " << root.iterations
         << " iterations (|residual| = " << std::abs(root.fx) << ")";
      throw Error(ErrorKind::NoConvergence, os.str());
    }
    b = root.x;
  }

  const auto params = ProfileParams::from_log_odds(log_odds_of_b_rho(b, rho), b);
  const auto image = forward_map(params);
  return {params, std::abs(image.rho - rho), std::abs(image.m - m), iterations};
}

}  // namespace eqens
