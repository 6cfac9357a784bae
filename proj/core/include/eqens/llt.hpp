#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace eqens {

inline constexpr int kDefaultPmfCap = 250;
inline constexpr std::size_t kDefaultDefectCap = 8;

/// Independent Bernoulli variables X_1..X_n with P(X_k = 1) = alpha_k and a
/// bounded set of excluded sites (defects).  Defines S = sum X_k and
/// T = sum k X_k over the non-excluded sites.
class WeightedSumModel {
 public:
  WeightedSumModel(std::vector<double> alpha, std::vector<int> defects = {},
                   std::size_t defect_cap = kDefaultDefectCap);

  /// alpha_k = profile(k / n), k = 1..n.  The profile is kept for the
  /// limit-constant variant of the correlation.
  static WeightedSumModel from_profile(int n, std::function<double(double)> profile,
                                       std::vector<int> defects = {});
  static WeightedSumModel constant(int n, double p, std::vector<int> defects = {});

  int n() const noexcept { return static_cast<int>(alpha_.size()); }
  double alpha(int k) const { return alpha_.at(static_cast<std::size_t>(k - 1)); }
  std::span<const double> alphas() const noexcept { return alpha_; }
  const std::vector<int>& defects() const noexcept { return defects_; }
  /// Non-excluded sites in increasing order.
  const std::vector<int>& active_sites() const noexcept { return active_; }
  const std::function<double(double)>* profile() const noexcept {
    return profile_ ? &profile_ : nullptr;
  }

 private:
  std::vector<double> alpha_;
  std::vector<int> defects_;
  std::vector<int> active_;
  std::function<double(double)> profile_;
};

struct MomentSummary {
  double E;  // E[S]
  double F;  // E[T]
  double U;  // Var S
  double V;  // Var T
  double lambda;  // Cov(S, T) / sqrt(U V)

  /// Correlation numerically indistinguishable from +-1 (e.g. n = 1).
  bool degenerate() const noexcept { return !(lambda * lambda < 1.0 - 1e-12); }
};

MomentSummary moments(const WeightedSumModel& model);

/// Limits of E/n, F/n^2, U/n, V/n^3 and the correlation for a continuous
/// profile alpha on [0, 1].
struct LimitConstants {
  double alpha_bar;
  double alpha_check;
  double v_bar;
  double v_check;
  double lambda;
};

LimitConstants limit_constants(const std::function<double(double)>& profile);

/// Dense joint law of (S, T): row K in [0, kmax], column L in [0, lmax].
class JointPMF {
 public:
  JointPMF(int n, int kmax, long long lmax, std::vector<double> values);

  int n() const noexcept { return n_; }
  int kmax() const noexcept { return kmax_; }
  long long lmax() const noexcept { return lmax_; }
  double at(int K, long long L) const noexcept {
    if (K < 0 || K > kmax_ || L < 0 || L > lmax_) return 0.0;
    return values_[static_cast<std::size_t>(K) * static_cast<std::size_t>(lmax_ + 1) +
                   static_cast<std::size_t>(L)];
  }
  bool in_support(int K, long long L) const noexcept { return at(K, L) > 0.0; }
  std::span<const double> values() const noexcept { return values_; }
  /// Compensated total mass.
  double mass() const noexcept;

 private:
  int n_;
  int kmax_;
  long long lmax_;
  std::vector<double> values_;
};

/// Exact dynamic program in double-double arithmetic.
/// Throws Error(CapExceeded) when n > cap.
JointPMF exact_pmf(const WeightedSumModel& model, int cap = kDefaultPmfCap);

/// Standard bivariate normal density with correlation lambda.
/// Throws Error(DegenerateCorrelation) unless |lambda| < 1.
double gaussian_q0(double y1, double y2, double lambda);

struct SupError {
  double value = 0.0;
  int K = 0;
  long long L = 0;
};

/// max over the support of |sqrt(U V) P(K, L) - q0(y1, y2)| with
/// y1 = (K - E)/sqrt(U), y2 = (L - F)/sqrt(V), using the given correlation.
SupError sup_error(const JointPMF& pmf, const MomentSummary& m, double lambda);

enum class LambdaMode { Finite, Limit };

/// Convenience: exact PMF plus the scan.  LambdaMode::Limit needs a model
/// built from a profile.
SupError sup_error(const WeightedSumModel& model, LambdaMode mode = LambdaMode::Finite);

/// E exp(i(sS + tT)) = prod_{k active} (alpha_k e^{i(s + k t)} + 1 - alpha_k).
std::complex<double> char_fn(const WeightedSumModel& model, double s, double t);

/// Least-squares slope of log(error) against log(n).
double loglog_slope(std::span<const double> n, std::span<const double> error);

}  // namespace eqens
