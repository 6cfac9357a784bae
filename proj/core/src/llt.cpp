#include "eqens/llt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>

#include "eqens/error.hpp"

namespace eqens {

WeightedSumModel::WeightedSumModel(std::vector<double> alpha, std::vector<int> defects,
                                   std::size_t defect_cap)
    : alpha_(std::move(alpha)), defects_(std::move(defects)) {
  if (alpha_.empty()) throw Error(ErrorKind::OutOfDomain, "WeightedSumModel: n must be >= 1");
  for (double a : alpha_) {
    if (!(a > 0.0 && a < 1.0)) {
      throw Error(ErrorKind::OutOfDomain, "WeightedSumModel: every alpha_k must lie in (0, 1)");
    }
  }
  std::sort(defects_.begin(), defects_.end());
  defects_.erase(std::unique(defects_.begin(), defects_.end()), defects_.end());
  if (defects_.size() > defect_cap) {
    throw Error(ErrorKind::OutOfDomain, "WeightedSumModel: more defects than the cap allows");
  }
  const int n = static_cast<int>(alpha_.size());
  for (int d : defects_) {
    if (d < 1 || d > n) {
      throw Error(ErrorKind::OutOfDomain, "WeightedSumModel: defect " + std::to_string(d) +
                                              " outside 1.." + std::to_string(n));
    }
  }
  for (int k = 1; k <= n; ++k) {
    if (!std::binary_search(defects_.begin(), defects_.end(), k)) active_.push_back(k);
  }
}

WeightedSumModel WeightedSumModel::from_profile(int n, std::function<double(double)> profile,
                                                std::vector<int> defects) {
  if (n < 1) throw Error(ErrorKind::OutOfDomain, "WeightedSumModel: n must be >= 1");
  std::vector<double> alpha(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) alpha[k - 1] = profile(static_cast<double>(k) / n);
  WeightedSumModel model(std::move(alpha), std::move(defects));
  model.profile_ = std::move(profile);
  return model;
}

WeightedSumModel WeightedSumModel::constant(int n, double p, std::vector<int> defects) {
  return from_profile(n, [p](double) { return p; }, std::move(defects));
}

MomentSummary moments(const WeightedSumModel& model) {
  double E = 0.0, F = 0.0, U = 0.0, V = 0.0, C = 0.0;
  for (int k : model.active_sites()) {
    const double a = model.alpha(k);
    const double v = a * (1.0 - a);
    E += a;
    F += k * a;
    U += v;
    V += static_cast<double>(k) * k * v;
    C += k * v;
  }
  const double lambda = (U > 0.0 && V > 0.0) ? C / std::sqrt(U * V) : 1.0;
  return {E, F, U, V, lambda};
}

LimitConstants limit_constants(const std::function<double(double)>& profile) {
  using Rule = boost::math::quadrature::gauss<double, 30>;
  auto integrate = [&](auto&& f) { return Rule::integrate(f, 0.0, 1.0); };
  const double a_bar = integrate([&](double x) { return profile(x); });
  const double a_check = integrate([&](double x) { return x * profile(x); });
  const double v_bar = integrate([&](double x) { return profile(x) * (1 - profile(x)); });
  const double v_check =
      integrate([&](double x) { return x * x * profile(x) * (1 - profile(x)); });
  const double cross = integrate([&](double x) { return x * profile(x) * (1 - profile(x)); });
  return {a_bar, a_check, v_bar, v_check, cross / std::sqrt(v_bar * v_check)};
}

// ---------------------------------------------------------------------------

JointPMF::JointPMF(int n, int kmax, long long lmax, std::vector<double> values)
    : n_(n), kmax_(kmax), lmax_(lmax), values_(std::move(values)) {
  if (values_.size() != static_cast<std::size_t>(kmax_ + 1) * static_cast<std::size_t>(lmax_ + 1)) {
    throw Error(ErrorKind::OutOfDomain, "JointPMF: table size does not match (kmax, lmax)");
  }
}

double JointPMF::mass() const noexcept {
  double sum = 0.0, comp = 0.0;
  for (double v : values_) {
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

namespace {

// double-double helpers
inline void two_sum(double a, double b, double& s, double& e) {
  s = a + b;
  const double bb = s - a;
  e = (a - (s - bb)) + (b - bb);
}

}  // namespace

JointPMF exact_pmf(const WeightedSumModel& model, int cap) {
  if (model.n() > cap) {
    std::ostringstream os;
    os << "exact_pmf: n = " << model.n() << " exceeds the cap " << cap;
    throw Error(ErrorKind::CapExceeded, os.str());
  }
  const auto& active = model.active_sites();
  const int kmax = static_cast<int>(active.size());
  long long lmax = 0;
  for (int k : active) lmax += k;
  const auto width = static_cast<std::size_t>(lmax + 1);
  const std::size_t cells = static_cast<std::size_t>(kmax + 1) * width;
  std::vector<double> hi(cells, 0.0), lo(cells, 0.0);
  hi[0] = 1.0;

  // prefix sums of processed weights bound the support of each row
  std::vector<long long> smallest(1, 0);  // smallest[K] = sum of K smallest
  std::vector<int> seen;
  for (int j = 0; j < kmax; ++j) {
    const int k = active[j];
    const double p = model.alpha(k);
    const double q = 1.0 - p;
    seen.push_back(k);
    smallest.push_back(smallest.back() + k);
    const int rows = j + 1;
    long long largest = 0;  // sum of K largest seen, built as K grows
    std::vector<long long> largest_of(static_cast<std::size_t>(rows + 1), 0);
    for (int K = 1; K <= rows; ++K) {
      largest += seen[rows - K];
      largest_of[K] = largest;
    }
    for (int K = rows; K >= 0; --K) {
      const std::size_t row = static_cast<std::size_t>(K) * width;
      const std::size_t prev = K > 0 ? static_cast<std::size_t>(K - 1) * width : 0;
      for (long long L = largest_of[K]; L >= smallest[K]; --L) {
        const std::size_t idx = row + static_cast<std::size_t>(L);
        const double stay_hi = q * hi[idx];
        const double stay_err = std::fma(q, hi[idx], -stay_hi);
        double move_hi = 0.0, move_err = 0.0, move_lo = 0.0;
        if (K > 0 && L >= k) {
          const std::size_t src = prev + static_cast<std::size_t>(L - k);
          move_hi = p * hi[src];
          move_err = std::fma(p, hi[src], -move_hi);
          move_lo = p * lo[src];
        }
        double s, e;
        two_sum(stay_hi, move_hi, s, e);
        const double tail = e + stay_err + move_err + q * lo[idx] + move_lo;
        double h, t;
        two_sum(s, tail, h, t);
        hi[idx] = h;
        lo[idx] = t;
      }
    }
  }
  for (std::size_t i = 0; i < cells; ++i) hi[i] += lo[i];
  return JointPMF(model.n(), kmax, lmax, std::move(hi));
}

double gaussian_q0(double y1, double y2, double lambda) {
  if (!(std::abs(lambda) < 1.0)) {
    throw Error(ErrorKind::DegenerateCorrelation,
                "gaussian_q0: correlation must satisfy |lambda| < 1");
  }
  const double one_minus = 1.0 - lambda * lambda;
  const double quad = y1 * y1 - 2.0 * lambda * y1 * y2 + y2 * y2;
  return std::exp(-quad / (2.0 * one_minus)) / (2.0 * std::numbers::pi * std::sqrt(one_minus));
}

SupError sup_error(const JointPMF& pmf, const MomentSummary& m, double lambda) {
  if (!(std::abs(lambda) < 1.0)) {
    throw Error(ErrorKind::DegenerateCorrelation, "sup_error: degenerate correlation");
  }
  const double su = std::sqrt(m.U);
  const double sv = std::sqrt(m.V);
  const double scale = su * sv;
  SupError best;
  for (int K = 0; K <= pmf.kmax(); ++K) {
    const double y1 = (K - m.E) / su;
    for (long long L = 0; L <= pmf.lmax(); ++L) {
      const double p = pmf.at(K, L);
      if (!(p > 0.0)) continue;
      const double y2 = (static_cast<double>(L) - m.F) / sv;
      const double err = std::abs(scale * p - gaussian_q0(y1, y2, lambda));
      if (err > best.value) best = {err, K, L};
    }
  }
  return best;
}

SupError sup_error(const WeightedSumModel& model, LambdaMode mode) {
  const auto m = moments(model);
  double lambda = m.lambda;
  if (mode == LambdaMode::Limit) {
    const auto* profile = model.profile();
    if (profile == nullptr) {
      throw Error(ErrorKind::OutOfDomain, "sup_error: limit correlation needs a profile model");
    }
    lambda = limit_constants(*profile).lambda;
  }
  return sup_error(exact_pmf(model), m, lambda);
}

std::complex<double> char_fn(const WeightedSumModel& model, double s, double t) {
  std::complex<double> acc(1.0, 0.0);
  for (int k : model.active_sites()) {
    const double a = model.alpha(k);
    acc *= a * std::polar(1.0, s + k * t) + (1.0 - a);
  }
  return acc;
}

double loglog_slope(std::span<const double> n, std::span<const double> error) {
  if (n.size() != error.size() || n.size() < 2) {
    throw Error(ErrorKind::OutOfDomain, "loglog_slope: need >= 2 matched points");
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double c = static_cast<double>(n.size());
  for (std::size_t i = 0; i < n.size(); ++i) {
    const double x = std::log(n[i]);
    const double y = std::log(error[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (c * sxy - sx * sy) / (c * sxx - sx * sx);
}

}  // namespace eqens
