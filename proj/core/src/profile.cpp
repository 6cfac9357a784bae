#include "eqens/profile.hpp"

#include <array>
#include <cmath>
#include <string>

#include "eqens/dilog.hpp"
#include "eqens/error.hpp"

namespace eqens {
namespace {

// Below this |b| the closed forms lose ~eps/b^2 to cancellation and the
// Taylor expansion in b is used instead (truncation ~b^11).
constexpr double kSmallTilt = 0.05;
constexpr int kTaylorTerms = 10;  // j = 0..9
constexpr int kMaxDerivative = 12;

// d^n/dz^n logistic(z) = P_n(s) with s = logistic(z); P_0 = s and
// P_{n+1}(s) = P_n'(s) s (1 - s).  Coefficients in increasing powers of s.
struct LogisticDerivatives {
  std::array<std::array<double, kMaxDerivative + 2>, kMaxDerivative + 1> coef{};

  LogisticDerivatives() {
    coef[0][1] = 1.0;
    for (int n = 0; n < kMaxDerivative; ++n) {
      // derivative of P_n, then multiply by (s - s^2)
      std::array<double, kMaxDerivative + 2> d{};
      for (int k = 1; k <= kMaxDerivative + 1; ++k) d[k - 1] = k * coef[n][k];
      for (int k = 0; k <= kMaxDerivative; ++k) {
        coef[n + 1][k + 1] += d[k];
        coef[n + 1][k + 2] -= d[k];
      }
    }
  }

  double eval(int n, double s) const {
    double acc = 0.0;
    for (int k = kMaxDerivative + 1; k >= 0; --k) acc = acc * s + coef[n][k];
    return acc;
  }
};

const LogisticDerivatives& logistic_derivatives() {
  static const LogisticDerivatives table;
  return table;
}

// int_{-1}^{1} x^k logistic^{(d)}(lo + b x) dx by Taylor expansion in b.
double taylor_moment(int k, int d, double s, double b) {
  const auto& table = logistic_derivatives();
  double sum = 0.0;
  double bj_over_fact = 1.0;
  for (int j = 0; j < kTaylorTerms; ++j) {
    if (j > 0) bj_over_fact *= b / j;
    if ((k + j) % 2 != 0) continue;
    sum += table.eval(d + j, s) * bj_over_fact * 2.0 / (k + j + 1);
  }
  return sum;
}

}  // namespace

ProfileParams::ProfileParams(double a, double b) : a_(a), log_odds_(0.0), b_(b) {
  if (!(a > 0.0 && a < 1.0) || !std::isfinite(b)) {
    throw Error(ErrorKind::OutOfDomain,
                "ProfileParams: need 0 < a < 1 and finite b (a=" +
                    std::to_string(a) + ", b=" + std::to_string(b) + ")");
  }
  log_odds_ = std::log(a) - std::log1p(-a);
}

ProfileParams ProfileParams::from_log_odds(double log_odds, double b) {
  if (!std::isfinite(log_odds) || !std::isfinite(b)) {
    throw Error(ErrorKind::OutOfDomain, "ProfileParams: non-finite log-odds or b");
  }
  return ProfileParams(logistic(log_odds), log_odds, b, 0);
}

double beta(double x, const ProfileParams& p) noexcept {
  return logistic(p.b() * x + p.log_odds());
}

double beta_prime(double x, const ProfileParams& p) noexcept {
  const double s = beta(x, p);
  return p.b() * s * (1.0 - s);
}

double log_g(double x, const ProfileParams& p) noexcept {
  return log1p_exp(p.b() * x + p.log_odds()) - log1p_exp(p.log_odds());
}

double profile_F(const ProfileParams& p) noexcept {
  const double b = p.b();
  const double lo = p.log_odds();
  if (std::abs(b) < kSmallTilt) return 0.5 * taylor_moment(0, 0, p.a(), b);
  return (log1p_exp(lo + b) - log1p_exp(lo - b)) / (2.0 * b);
}

double profile_G(const ProfileParams& p) noexcept {
  const double b = p.b();
  const double lo = p.log_odds();
  if (std::abs(b) < kSmallTilt) return 0.25 * taylor_moment(1, 0, p.a(), b);
  const double log_part = (log1p_exp(lo + b) + log1p_exp(lo - b)) / b;
  const double dilog_part = (dilog_neg_exp(lo + b) - dilog_neg_exp(lo - b)) / (b * b);
  return 0.25 * (log_part + dilog_part);
}

MacroState forward_map(const ProfileParams& p) noexcept {
  return {profile_F(p), profile_G(p)};
}

ForwardJacobian forward_jacobian(const ProfileParams& p) noexcept {
  const double b = p.b();
  double w0, w1, w2;  // int x^k beta(1-beta) dx, k = 0, 1, 2
  if (std::abs(b) < kSmallTilt) {
    const double s = p.a();
    w0 = taylor_moment(0, 1, s, b);
    w1 = taylor_moment(1, 1, s, b);
    w2 = taylor_moment(2, 1, s, b);
  } else {
    // beta(1-beta) = beta'/b; integrate by parts
    const double hi = beta(1.0, p);
    const double lo = beta(-1.0, p);
    w0 = (hi - lo) / b;
    w1 = (hi + lo - 2.0 * profile_F(p)) / b;
    w2 = (hi - lo - 8.0 * profile_G(p)) / b;
  }
  return {0.5 * w0, 0.5 * w1, 0.25 * w1, 0.25 * w2};
}

}  // namespace eqens
