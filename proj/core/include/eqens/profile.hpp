#pragma once

#include <cmath>
#include <utility>

namespace eqens {

/// Parameters (a, b) of the tilted Bernoulli profile
///   beta(x; a, b) = e^{bx} a / (e^{bx} a + 1 - a).
///
/// The log-odds of `a` is stored alongside `a` so that profiles with
/// |b| in the hundreds (where `a` itself rounds to 0 or 1) stay exact.
class ProfileParams {
 public:
  /// Throws Error(OutOfDomain) unless 0 < a < 1 and b is finite.
  ProfileParams(double a, double b);

  static ProfileParams from_log_odds(double log_odds, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double log_odds() const noexcept { return log_odds_; }

 private:
  ProfileParams(double a, double log_odds, double b, int)
      : a_(a), log_odds_(log_odds), b_(b) {}

  double a_;
  double log_odds_;
  double b_;
};

/// Macroscopic density rho and first moment m; valid iff
/// 0 < rho < 1 and |m| < rho(1-rho)/2.
struct MacroState {
  double rho;
  double m;

  double v() const noexcept { return rho * (1.0 - rho); }
  bool in_domain() const noexcept {
    return rho > 0.0 && rho < 1.0 && std::abs(m) < 0.5 * v();
  }
};

inline double logistic(double z) noexcept {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

/// log(1 + e^z) without overflow.
inline double log1p_exp(double z) noexcept {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

double beta(double x, const ProfileParams& p) noexcept;

/// d beta / dx = b beta (1 - beta).
double beta_prime(double x, const ProfileParams& p) noexcept;

/// log g(x) with g(x) = e^{bx} a + (1 - a).
double log_g(double x, const ProfileParams& p) noexcept;

/// F(a,b) = 1/2 int_{-1}^{1} beta dx  (the rho coordinate).
double profile_F(const ProfileParams& p) noexcept;

/// G(a,b) = 1/4 int_{-1}^{1} x beta dx  (the m coordinate).
double profile_G(const ProfileParams& p) noexcept;

/// (F, G) in one call; this is the forward map onto the (rho, m) domain.
MacroState forward_map(const ProfileParams& p) noexcept;

/// Partial derivatives of F and G with respect to the log-odds and b.
struct ForwardJacobian {
  double dF_dlogodds;
  double dF_db;
  double dG_dlogodds;
  double dG_db;
};

ForwardJacobian forward_jacobian(const ProfileParams& p) noexcept;

}  // namespace eqens
