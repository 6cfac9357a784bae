#include "eqens/dilog.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "eqens/error.hpp"

namespace eqens {
namespace {

constexpr double kPi2Over6 = std::numbers::pi * std::numbers::pi / 6.0;

// |z| <= 1/2: the defining series sum z^k / k^2 converges like 2^-k.
double dilog_series(double z) {
  double term = z;
  double sum = z;
  for (int k = 2; k < 200; ++k) {
    term *= z;
    const double add = term / (static_cast<double>(k) * k);
    sum += add;
    if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double dilog(double z) {
  if (!(z <= 1.0)) {
    throw Error(ErrorKind::DomainError,
                "dilog: argument must be <= 1, got " + std::to_string(z));
  }
  if (z == 1.0) return kPi2Over6;
  if (z > 0.5) {
    // reflection
    return kPi2Over6 - std::log(z) * std::log1p(-z) - dilog_series(1.0 - z);
  }
  if (z >= -0.5) return dilog_series(z);
  if (z >= -1.0) {
    // Landen: maps [-1, -1/2) onto [1/3, 1/2)
    const double l = std::log1p(-z);
    return -dilog_series(z / (z - 1.0)) - 0.5 * l * l;
  }
  // inversion
  const double l = std::log(-z);
  return -dilog(1.0 / z) - kPi2Over6 - 0.5 * l * l;
}

double dilog_neg_exp(double s) {
  if (std::isnan(s)) throw Error(ErrorKind::DomainError, "dilog_neg_exp: NaN");
  if (s <= 0.0) return dilog(-std::exp(s));
  return -dilog(-std::exp(-s)) - kPi2Over6 - 0.5 * s * s;
}

}  // namespace eqens
