#pragma once

#include "eqens/profile.hpp"

namespace eqens {

struct InversionOptions {
  double tol = 1e-12;
  int max_iterations = 200;
  // Targets with |m| > (1 - boundary_margin) v/2 are rejected.
  double boundary_margin = 1e-6;
  // Largest |b| tried while bracketing.
  double max_abs_b = 700.0;
};

struct InversionResult {
  ProfileParams params;
  double residual_rho;  // |F(a,b) - rho|
  double residual_m;    // |G(a,b) - m|
  int iterations;
};

// Log-odds of the unique a with F(a, b) = rho.
double log_odds_of_b_rho(double b, double rho);

// a(b; rho) solving F(a, b) = rho; b = 0 gives rho.
double a_of_b_rho(double b, double rho);

// Solves (F, G)(a, b) = (rho, m).  The constraint F = rho is eliminated with
// a(b; rho), leaving the monotone scalar equation G(a(b; rho), b) = m.
// Throws Error(OutOfDomain) or Error(NoConvergence).
InversionResult invert(const MacroState& target, const InversionOptions& opts = {});

}  // namespace eqens
