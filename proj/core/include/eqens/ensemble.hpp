#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "eqens/profile.hpp"

namespace eqens {

// Exact configuration counts.  2^(2l+1) fits for l <= 127.
using Count = boost::multiprecision::uint256_t;

inline constexpr int kMaxExactEll = 127;
inline constexpr int kDefaultExactSamplerCap = 80;
inline constexpr int kMaxCountTableEll = 40;
inline constexpr int kMaxFloatMarginalEll = 150;
inline constexpr int kMaxEnumerationEll = 10;

/// Window {-l, ..., l} with K particles and first moment sum_k k eta_k = M.
struct CanonicalSpec {
  int ell = 1;
  int K = 0;
  long long M = 0;

  int sites() const noexcept { return 2 * ell + 1; }
  /// T = M + (l+1) K: the weighted sum after relabelling sites as 1..n.
  long long shifted_weight() const noexcept {
    return M + static_cast<long long>(ell + 1) * K;
  }
  /// Largest |M| compatible with K: K(n-K)/2 (particles packed at one edge).
  long long max_abs_moment() const noexcept {
    return static_cast<long long>(K) * (sites() - K) / 2;
  }
  bool feasible() const noexcept {
    return ell >= 1 && K >= 0 && K <= sites() && M >= -max_abs_moment() &&
           M <= max_abs_moment();
  }
  MacroState realized() const noexcept {
    const double n = sites();
    return {K / n, static_cast<double>(M) / (n * n)};
  }

  /// Nearest-integer K = rho n, M = m n^2, clamped to the feasible range.
  static CanonicalSpec from_macro(int ell, const MacroState& target);
};

/// A {0,1} configuration on {-l, ..., l}; occupancy[k + l] is eta_k.
struct ParticleConfig {
  int ell = 0;
  std::vector<std::uint8_t> occupancy;

  ParticleConfig() = default;
  ParticleConfig(int ell, std::vector<std::uint8_t> occ);

  int sites() const noexcept { return 2 * ell + 1; }
  int at(int k) const { return occupancy.at(static_cast<std::size_t>(k + ell)); }
  int particle_count() const noexcept;
  long long moment() const noexcept;

  friend bool operator==(const ParticleConfig&, const ParticleConfig&) = default;
};

/// Counts of all configurations on the window indexed by (K, T).
class CountTable {
 public:
  explicit CountTable(int ell);

  int ell() const noexcept { return ell_; }
  long long max_weight() const noexcept { return max_weight_; }
  const Count& at(int K, long long T) const;
  Count at_moment(int K, long long M) const;
  Count total() const;

 private:
  int ell_;
  long long max_weight_;
  std::vector<Count> counts_;
};

/// |{eta : K(eta) = K, M(eta) = M}|, exactly.  Returns 0 if infeasible.
/// Throws Error(CapExceeded) for l > kMaxExactEll.
Count count(const CanonicalSpec& spec);

struct SiteConstraint {
  int site;  // k in {-l, ..., l}
  int bit;   // 0 or 1
};

struct Marginal {
  Count favourable;
  Count total;
  double probability() const;
};

/// Uniform-measure probability that every constraint holds (<= 4 sites),
/// as an exact ratio of counts.
Marginal exact_marginal(const CanonicalSpec& spec, std::span<const SiteConstraint> sites);

/// P(eta_k = 1) for every k in the window under the canonical ensemble.
/// Exact up to l = kDefaultExactSamplerCap, scaled floating-point beyond.
std::vector<double> site_marginals(const CanonicalSpec& spec);

std::vector<ParticleConfig> sample_exact(const CanonicalSpec& spec, std::uint64_t seed,
                                         std::size_t count,
                                         int cap = kDefaultExactSamplerCap);

struct McmcOptions {
  long long sweeps = -1;   // < 0: max(10^4, n^2 / 4), enough to mix at l = 200
  long long burn_in = -1;  // < 0: sweeps / 2
  long long thin = 0;      // <= 0: spread the post-burn-in sweeps evenly
  int chains = 1;
};

/// Pair-move Metropolis chain on configurations with fixed (K, M).
/// Chain c is seeded from (seed, c); samples are ordered by chain.
std::vector<ParticleConfig> sample_mcmc(const CanonicalSpec& spec, std::uint64_t seed,
                                        const McmcOptions& opts, std::size_t count);

/// Packed starting configuration used by the chain.
ParticleConfig staircase_config(const CanonicalSpec& spec);

/// Exhaustive check that conditioning the product measure with
/// E[eta_k] = profile(k/l) on each (K, M) class yields the uniform law.
/// Returns the largest spread (max - min) of conditional probabilities.
double conditional_spread(int ell, const std::function<double(double)>& profile);
double conditional_spread(int ell, const ProfileParams& p);

}  // namespace eqens
