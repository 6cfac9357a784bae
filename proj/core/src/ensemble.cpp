#include "eqens/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include "banded_counts.hpp"
#include "eqens/error.hpp"

namespace eqens {

CanonicalSpec CanonicalSpec::from_macro(int ell, const MacroState& target) {
  if (ell < 1) throw Error(ErrorKind::OutOfDomain, "CanonicalSpec: ell must be >= 1");
  CanonicalSpec spec;
  spec.ell = ell;
  const double n = spec.sites();
  spec.K = static_cast<int>(std::clamp(std::llround(target.rho * n), 0LL,
                                       static_cast<long long>(spec.sites())));
  const long long bound = spec.max_abs_moment();
  spec.M = std::clamp(std::llround(target.m * n * n), -bound, bound);
  return spec;
}

ParticleConfig::ParticleConfig(int ell_, std::vector<std::uint8_t> occ)
    : ell(ell_), occupancy(std::move(occ)) {
  if (ell < 0 || occupancy.size() != static_cast<std::size_t>(2 * ell + 1)) {
    throw Error(ErrorKind::OutOfDomain, "ParticleConfig: occupancy must have 2l+1 entries");
  }
  for (auto bit : occupancy) {
    if (bit > 1) throw Error(ErrorKind::OutOfDomain, "ParticleConfig: entries must be 0 or 1");
  }
}

int ParticleConfig::particle_count() const noexcept {
  int k = 0;
  for (auto bit : occupancy) k += bit;
  return k;
}

long long ParticleConfig::moment() const noexcept {
  long long m = 0;
  for (int k = -ell; k <= ell; ++k) m += static_cast<long long>(k) * occupancy[k + ell];
  return m;
}

// ---------------------------------------------------------------------------

CountTable::CountTable(int ell) : ell_(ell) {
  if (ell < 1 || ell > kMaxCountTableEll) {
    throw Error(ErrorKind::CapExceeded, "CountTable: ell must be in [1, " +
                                            std::to_string(kMaxCountTableEll) + "]");
  }
  const int n = 2 * ell + 1;
  max_weight_ = static_cast<long long>(n) * (n + 1) / 2;
  const auto width = static_cast<std::size_t>(max_weight_ + 1);
  counts_.assign(static_cast<std::size_t>(n + 1) * width, Count(0));
  counts_[0] = 1;
  for (int i = 1; i <= n; ++i) {
    const long long top = static_cast<long long>(i) * (i + 1) / 2;
    for (int k = i; k >= 1; --k) {
      for (long long t = top; t >= i; --t) {
        counts_[k * width + t] += counts_[(k - 1) * width + (t - i)];
      }
    }
  }
}

const Count& CountTable::at(int K, long long T) const {
  static const Count zero(0);
  const int n = 2 * ell_ + 1;
  if (K < 0 || K > n || T < 0 || T > max_weight_) return zero;
  return counts_[static_cast<std::size_t>(K) * (max_weight_ + 1) + T];
}

Count CountTable::at_moment(int K, long long M) const {
  return at(K, M + static_cast<long long>(ell_ + 1) * K);
}

Count CountTable::total() const {
  Count sum = 0;
  for (const auto& c : counts_) sum += c;
  return sum;
}

// ---------------------------------------------------------------------------

namespace {

void require_exact_range(const CanonicalSpec& spec, const char* who) {
  if (spec.ell > kMaxExactEll) {
    std::ostringstream os;
    os << who << ": ell = " << spec.ell << " exceeds the exact-count limit " << kMaxExactEll;
    throw Error(ErrorKind::CapExceeded, os.str());
  }
}

}  // namespace

Count count(const CanonicalSpec& spec) {
  if (!spec.feasible()) return 0;
  require_exact_range(spec, "count");
  const int n = spec.sites();
  const int K = spec.K;
  const long long T = spec.shifted_weight();
  // rolling dense DP over (particles used, weight used), truncated at (K, T)
  const auto width = static_cast<std::size_t>(T + 1);
  std::vector<Count> table(static_cast<std::size_t>(K + 1) * width, Count(0));
  table[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int k = std::min(K, i); k >= 1; --k) {
      for (long long t = T; t >= i; --t) {
        table[k * width + t] += table[(k - 1) * width + (t - i)];
      }
    }
  }
  return table[K * width + T];
}

double Marginal::probability() const {
  if (total == 0) return 0.0;
  return favourable.convert_to<double>() / total.convert_to<double>();
}

Marginal exact_marginal(const CanonicalSpec& spec, std::span<const SiteConstraint> sites) {
  if (sites.size() > 4) {
    throw Error(ErrorKind::OutOfDomain, "exact_marginal: at most 4 constrained sites");
  }
  require_exact_range(spec, "exact_marginal");
  if (!spec.feasible()) {
    throw Error(ErrorKind::InfeasibleConstraint, "exact_marginal: infeasible (K, M)");
  }
  const int n = spec.sites();
  // forced[i] for relabelled site i: -1 free, otherwise the forced bit
  std::vector<int> forced(static_cast<std::size_t>(n + 1), -1);
  for (const auto& s : sites) {
    if (s.site < -spec.ell || s.site > spec.ell || (s.bit != 0 && s.bit != 1)) {
      throw Error(ErrorKind::OutOfDomain, "exact_marginal: site outside window or bit not 0/1");
    }
    int& slot = forced[s.site + spec.ell + 1];
    if (slot != -1 && slot != s.bit) return {Count(0), count(spec)};
    slot = s.bit;
  }

  const int K = spec.K;
  const long long T = spec.shifted_weight();
  const auto width = static_cast<std::size_t>(T + 1);
  std::vector<Count> table(static_cast<std::size_t>(K + 1) * width, Count(0));
  table[0] = 1;
  for (int i = 1; i <= n; ++i) {
    const int f = forced[i];
    if (f == 1) {
      // occupied: shift every state by (1, i)
      for (int k = std::min(K, i); k >= 0; --k) {
        for (long long t = T; t >= 0; --t) {
          Count& cell = table[k * width + t];
          cell = (k >= 1 && t >= i) ? table[(k - 1) * width + (t - i)] : Count(0);
        }
      }
    } else if (f == -1) {
      for (int k = std::min(K, i); k >= 1; --k) {
        for (long long t = T; t >= i; --t) {
          table[k * width + t] += table[(k - 1) * width + (t - i)];
        }
      }
    }
  }
  const Count total = count(spec);
  if (total == 0) throw Error(ErrorKind::InfeasibleConstraint, "exact_marginal: empty ensemble");
  return {table[K * width + T], total};
}

namespace {

template <class V>
std::vector<double> banded_marginals(const CanonicalSpec& spec, V factor) {
  const detail::BandedCounts<V> suffix(spec, factor);
  const int n = spec.sites();
  const V total = suffix.total();
  std::vector<double> marginals(static_cast<std::size_t>(n), 0.0);

  // prefix weights A_i(c, t) on the band of layer i
  auto prefix = suffix.make_layer(1);
  {
    auto& row = prefix.rows[spec.K - prefix.c_min];
    row.values[static_cast<std::size_t>(spec.shifted_weight() - row.lo)] = V(1);
  }
  for (int i = 1; i <= n; ++i) {
    const auto& next_suffix = suffix.layer(i + 1);
    V occupied(0);
    for (std::size_t r = 0; r < prefix.rows.size(); ++r) {
      const int c = prefix.c_min + static_cast<int>(r);
      if (c == 0) continue;
      const auto& row = prefix.rows[r];
      for (std::size_t j = 0; j < row.values.size(); ++j) {
        if (row.values[j] == V(0)) continue;
        const long long t = row.lo + static_cast<long long>(j);
        occupied += row.values[j] * detail::BandedCounts<V>::lookup(next_suffix, c - 1, t - i);
      }
    }
    if constexpr (std::is_floating_point_v<V>) {
      marginals[i - 1] = occupied * factor / total;
    } else {
      marginals[i - 1] = occupied.template convert_to<double>() / total.template convert_to<double>();
    }
    if (i == n) break;
    auto next_prefix = suffix.make_layer(i + 1);
    for (std::size_t r = 0; r < next_prefix.rows.size(); ++r) {
      const int c = next_prefix.c_min + static_cast<int>(r);
      auto& row = next_prefix.rows[r];
      for (std::size_t j = 0; j < row.values.size(); ++j) {
        const long long t = row.lo + static_cast<long long>(j);
        V v = detail::BandedCounts<V>::lookup(prefix, c, t) +
              detail::BandedCounts<V>::lookup(prefix, c + 1, t + i);
        if constexpr (std::is_floating_point_v<V>) v *= factor;
        row.values[j] = v;
      }
    }
    prefix = std::move(next_prefix);
  }
  return marginals;
}

}  // namespace

std::vector<double> site_marginals(const CanonicalSpec& spec) {
  if (!spec.feasible()) {
    throw Error(ErrorKind::InfeasibleConstraint, "site_marginals: infeasible (K, M)");
  }
  if (spec.ell <= kDefaultExactSamplerCap) return banded_marginals<Count>(spec, Count(1));
  if (spec.ell <= kMaxFloatMarginalEll) return banded_marginals<double>(spec, 0.5);
  throw Error(ErrorKind::CapExceeded, "site_marginals: ell = " + std::to_string(spec.ell) +
                                          " exceeds " + std::to_string(kMaxFloatMarginalEll));
}

// ---------------------------------------------------------------------------

double conditional_spread(int ell, const std::function<double(double)>& profile) {
  if (ell < 1 || ell > kMaxEnumerationEll) {
    throw Error(ErrorKind::CapExceeded, "conditional_spread: ell must be in [1, " +
                                            std::to_string(kMaxEnumerationEll) + "]");
  }
  const int n = 2 * ell + 1;
  std::vector<double> occupied(n), empty(n);
  for (int i = 0; i < n; ++i) {
    const double q = profile(static_cast<double>(i - ell) / ell);
    occupied[i] = q;
    empty[i] = 1.0 - q;
  }
  struct Group {
    double total = 0.0;
    std::vector<double> members;
  };
  std::map<std::pair<int, int>, Group> groups;
  const std::uint32_t configs = 1u << n;
  for (std::uint32_t mask = 0; mask < configs; ++mask) {
    double prob = 1.0;
    int K = 0;
    int M = 0;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1u) {
        prob *= occupied[i];
        ++K;
        M += i - ell;
      } else {
        prob *= empty[i];
      }
    }
    auto& g = groups[{K, M}];
    g.total += prob;
    g.members.push_back(prob);
  }
  double spread = 0.0;
  for (const auto& [key, g] : groups) {
    if (g.total <= 0.0) continue;
    const auto [lo, hi] = std::minmax_element(g.members.begin(), g.members.end());
    spread = std::max(spread, (*hi - *lo) / g.total);
  }
  return spread;
}

double conditional_spread(int ell, const ProfileParams& p) {
  return conditional_spread(ell, [&p](double x) { return beta(x, p); });
}

}  // namespace eqens
