#include "eqens/vershik.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "eqens/error.hpp"
#include "eqens/inversion.hpp"
#include "eqens/young.hpp"

namespace eqens {
namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
// keeps e^{|c|} sinh|c| finite
constexpr double kMaxAbsC = 300.0;

double far_edge_weight(const BoseCurveParams& p) {
  return std::exp(-p.c_bar * (1.0 - 2.0 * p.rho_bar));
}

// log |sinh z|; -inf at 0
double log_abs_sinh(double z) {
  const double a = std::abs(z);
  return a - std::numbers::ln2 + std::log(-std::expm1(-2.0 * a));
}

double log_sum_exp(double x, double y) {
  const double hi = std::max(x, y);
  if (std::isinf(hi) && hi < 0.0) return hi;
  return hi + std::log1p(std::exp(std::min(x, y) - hi));
}

}  // namespace

void BoseCurveParams::validate() const {
  if (!(rho_bar > 0.0 && rho_bar < 1.0) || !(std::abs(c_bar) <= kMaxAbsC)) {
    std::ostringstream os;
    os << "BoseCurveParams: need 0 < rho_bar < 1 and |c_bar| <= " << kMaxAbsC
       << " (got rho_bar=" << rho_bar << ", c_bar=" << c_bar << ")";
    throw Error(ErrorKind::OutOfDomain, os.str());
  }
}

double bose_h(double t, const BoseCurveParams& p) {
  const double c = p.c_bar;
  return -2.0 * (std::sinh(c * t) + far_edge_weight(p) * std::sinh(c * (1.0 - t)));
}

double bose_h_prime(double t, const BoseCurveParams& p) {
  const double c = p.c_bar;
  return -2.0 * c * (std::cosh(c * t) - far_edge_weight(p) * std::cosh(c * (1.0 - t)));
}

double bose_L(double t, const BoseCurveParams& p) {
  p.validate();
  const double c = p.c_bar;
  const double rho = p.rho_bar;
  if (!(t >= 0.0 && t <= 1.0)) {
    std::ostringstream os;
    os << "bose_L: t=" << t << " outside [0, 1], where h(t)/h(0) > 0 is not guaranteed";
    throw Error(ErrorKind::DomainError, os.str());
  }
  if (c == 0.0) return t * (1.0 - 2.0 * rho);
  // h(t)/h(0) - 1 written without cancellation between exponentials
  const double d = 2.0 * std::sinh(0.5 * c) * std::sinh(0.5 * c * (t - 1.0)) -
                   std::expm1(-c * (1.0 - 2.0 * rho)) * std::cosh(c * (1.0 - 0.5 * t));
  const double excess = 2.0 * std::sinh(0.5 * c * t) * d / (far_edge_weight(p) * std::sinh(c));
  if (std::abs(excess) < 0.5) return std::log1p(excess) / c;
  // both terms of h share a sign on [0, 1], so the ratio is positive and is
  // taken in log space (excess itself may round to -1)
  const double log_e = -c * (1.0 - 2.0 * rho);
  const double log_ratio = log_sum_exp(log_abs_sinh(c * t), log_e + log_abs_sinh(c * (1.0 - t))) -
                           log_e - log_abs_sinh(c);
  return log_ratio / c;
}

double bose_L_prime(double t, const BoseCurveParams& p) {
  p.validate();
  const double c = p.c_bar;
  const double rho = p.rho_bar;
  if (c == 0.0) return 1.0 - 2.0 * rho;
  const double e = far_edge_weight(p);
  const double num = 2.0 * std::sinh(0.5 * c) * std::sinh(0.5 * c * (2.0 * t - 1.0)) -
                     std::expm1(-c * (1.0 - 2.0 * rho)) * std::cosh(c * (1.0 - t));
  const double den = std::sinh(c * t) + e * std::sinh(c * (1.0 - t));
  // |L'| <= 1 exactly; the ratio can overshoot by an ulp at large |c|
  return std::clamp(num / den, -1.0, 1.0);
}

double bose_L_second(double t, const BoseCurveParams& p) {
  const double lp = bose_L_prime(t, p);
  return p.c_bar * (1.0 - lp * lp);
}

RotatedBoseCurve rotate_bose(const BoseCurveParams& p, int grid_points) {
  RotatedBoseCurve out;
  out.t = Curve::uniform_grid(0.0, 1.0, grid_points);
  for (double t : out.t) {
    const double L = bose_L(t, p);
    out.u.push_back((t + L) / kSqrt2);
    out.v.push_back((L - t) / kSqrt2);
  }
  return out;
}

FermiCurve rotate_to_fermi(const BoseCurveParams& p, int grid_points) {
  p.validate();
  std::vector<double> x = Curve::uniform_grid(0.0, kSqrt2, grid_points);
  std::vector<double> psi, slope, curvature;
  psi.reserve(x.size());
  slope.reserve(x.size());
  curvature.reserve(x.size());
  const double L_end = bose_L(1.0, p);
  for (double xi : x) {
    const double t = xi / kSqrt2;
    // int_x^{sqrt2} (1 - L'(y/sqrt2))/2 dy
    psi.push_back(0.5 * (kSqrt2 - xi) - (L_end - bose_L(t, p)) / kSqrt2);
    slope.push_back(0.5 * (1.0 - bose_L_prime(t, p)));
    curvature.push_back(-bose_L_second(t, p) / (2.0 * kSqrt2));
  }
  return {Curve(std::move(x), std::move(psi)), std::move(slope), std::move(curvature)};
}

Curve gamma_scale(const Curve& c, double gamma) {
  if (!(gamma > 0.0)) throw Error(ErrorKind::OutOfDomain, "gamma_scale: gamma must be > 0");
  std::vector<double> x(c.x()), y(c.y());
  for (auto& v : x) v /= gamma;
  for (auto& v : y) v /= gamma;
  return Curve(std::move(x), std::move(y), c.interpolation());
}

Curve shift(const Curve& c, double dx) {
  std::vector<double> x(c.x());
  for (auto& v : x) v += dx;
  return Curve(std::move(x), c.y(), c.interpolation());
}

double ode_residual(std::span<const double> first, std::span<const double> second,
                    double coeff) {
  if (first.size() != second.size()) {
    throw Error(ErrorKind::OutOfDomain, "ode_residual: derivative arrays differ in length");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < first.size(); ++i) {
    worst = std::max(worst, std::abs(second[i] + coeff * first[i] * (1.0 + first[i])));
  }
  return worst;
}

double ode_residual(const Curve& c, double coeff) {
  if (c.size() < 5) {
    throw Error(ErrorKind::GridTooCoarse, "ode_residual: need at least 5 grid points");
  }
  const auto& x = c.x();
  const auto& y = c.y();
  std::vector<double> d1, d2;
  d1.reserve(x.size() - 2);
  d2.reserve(x.size() - 2);
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    const double h1 = x[i] - x[i - 1];
    const double h2 = x[i + 1] - x[i];
    const double s = h1 + h2;
    d1.push_back(-h2 / (h1 * s) * y[i - 1] + (h2 - h1) / (h1 * h2) * y[i] +
                 h1 / (h2 * s) * y[i + 1]);
    d2.push_back(2.0 * (y[i - 1] / (h1 * s) - y[i] / (h1 * h2) + y[i + 1] / (h2 * s)));
  }
  return ode_residual(d1, d2, coeff);
}

double limit_curve_ode_residual(const ProfileParams& p, double coeff, int grid_points) {
  std::vector<double> d1, d2;
  for (double x : Curve::uniform_grid(-1.0, 1.0, grid_points)) {
    d1.push_back(-beta(x, p));
    d2.push_back(-beta_prime(x, p));
  }
  return ode_residual(d1, d2, coeff);
}

Identification identify_curves(double rho, double m, int grid_points) {
  const auto inv = invert({rho, m});
  const BoseCurveParams bose{rho, -inv.params.b()};
  bose.validate();
  const Curve psi = limit_curve(inv.params, grid_points);
  const FermiCurve fermi = rotate_to_fermi(bose, grid_points);
  const Curve rescaled = shift(gamma_scale(fermi.psi, 1.0 / kSqrt2), -1.0);
  return {sup_distance(psi, rescaled), inv.params, bose};
}

}  // namespace eqens
