#pragma once

namespace eqens {

// Real Euler dilogarithm L2(z) = -int_0^z log(1-t)/t dt for z <= 1.
// Throws Error(DomainError) for z > 1 or NaN.
double dilog(double z);

// L2(-exp(s)) without forming exp(s); usable for arbitrarily large s.
double dilog_neg_exp(double s);

}  // namespace eqens
