#pragma once

#include <span>
#include <vector>

#include "eqens/curve.hpp"
#include "eqens/profile.hpp"

namespace eqens {

/// Box aspect parameter rho_bar in (0, 1) and area parameter c_bar.
struct BoseCurveParams {
  double rho_bar;
  double c_bar;

  /// Throws Error(OutOfDomain) on invalid values.
  void validate() const;
};

// h(t) = e^{-ct} - e^{ct} + e^{-c(2-2rho-t)} - e^{-c(t-2rho)} and its
// derivative.  Zero when c = 0.
double bose_h(double t, const BoseCurveParams& p);
double bose_h_prime(double t, const BoseCurveParams& p);

/// L(t) = (1/c) log(h(t)/h(0)); the linear limit t(1 - 2 rho) at c = 0.
/// h(t)/h(0) > 0 on [0, 1]; Throws Error(DomainError) for t outside it.
double bose_L(double t, const BoseCurveParams& p);
/// L'(t) = h'(t) / (c h(t)).
double bose_L_prime(double t, const BoseCurveParams& p);
/// L''(t) = c (1 - L'(t)^2).
double bose_L_second(double t, const BoseCurveParams& p);

/// The 45-degree rotated curve u = (t + L)/sqrt2, v = (L - t)/sqrt2.
struct RotatedBoseCurve {
  std::vector<double> t, u, v;
};
RotatedBoseCurve rotate_bose(const BoseCurveParams& p, int grid_points);

/// Height curve of the restricted statistics on [0, sqrt2] normalised to
/// vanish at sqrt2, with its slope data beta = -psi' and beta'.
struct FermiCurve {
  Curve psi;
  std::vector<double> beta;
  std::vector<double> beta_prime;
};

FermiCurve rotate_to_fermi(const BoseCurveParams& p, int grid_points);

/// x -> psi(gamma x) / gamma on [x0/gamma, x1/gamma].
Curve gamma_scale(const Curve& c, double gamma);

/// Shift the grid by dx.
Curve shift(const Curve& c, double dx);

/// max over interior grid points of |psi'' + coeff psi' (1 + psi')| with
/// non-uniform central differences.  Throws Error(GridTooCoarse) below 5 points.
double ode_residual(const Curve& c, double coeff);

/// Same residual from supplied derivatives.
double ode_residual(std::span<const double> first, std::span<const double> second,
                    double coeff);

/// Residual of the limit height psi = int_x^1 beta with psi' = -beta and
/// psi'' = -beta' evaluated in closed form on a uniform grid of [-1, 1].
double limit_curve_ode_residual(const ProfileParams& p, double coeff,
                                int grid_points = 1024);

struct Identification {
  double discrepancy;  // sup |psi - rescaled Fermi curve| on [-1, 1]
  ProfileParams params;
  BoseCurveParams bose;
};

/// Compare psi for (rho, m) with the rescaled rotated Bose curve built from
/// rho_bar = rho, c_bar = -b.
Identification identify_curves(double rho, double m, int grid_points = 1024);

}  // namespace eqens
