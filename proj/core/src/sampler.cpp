#include <algorithm>
#include <random>
#include <sstream>

#include "banded_counts.hpp"
#include "eqens/ensemble.hpp"
#include "eqens/error.hpp"

namespace eqens {
namespace {

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

// Exactly uniform on [0, bound) by rejection on the bit length of bound.
Count uniform_below(const Count& bound, std::mt19937_64& rng) {
  const unsigned bits = boost::multiprecision::msb(bound) + 1;
  const unsigned words = (bits + 63) / 64;
  const Count mask = bits >= 256 ? ~Count(0) : (Count(1) << bits) - 1;
  for (;;) {
    Count r = 0;
    for (unsigned w = 0; w < words; ++w) {
      r <<= 64;
      r |= Count(rng());
    }
    r &= mask;
    if (r < bound) return r;
  }
}

void require_feasible(const CanonicalSpec& spec, const char* who) {
  if (!spec.feasible()) {
    std::ostringstream os;
    os << who << ": no configuration with l=" << spec.ell << ", K=" << spec.K
       << ", M=" << spec.M;
    throw Error(ErrorKind::InfeasibleConstraint, os.str());
  }
}

}  // namespace

std::vector<ParticleConfig> sample_exact(const CanonicalSpec& spec, std::uint64_t seed,
                                         std::size_t count, int cap) {
  require_feasible(spec, "sample_exact");
  if (spec.ell > std::min(cap, kMaxExactEll)) {
    std::ostringstream os;
    os << "sample_exact: ell = " << spec.ell << " exceeds the exact-sampler cap " << cap
       << "; use the MCMC sampler";
    throw Error(ErrorKind::CapExceeded, os.str());
  }
  const detail::BandedCounts<Count> suffix(spec, Count(1));

  const int n = spec.sites();
  auto rng = make_rng(seed, 0);
  std::vector<ParticleConfig> out;
  out.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<std::uint8_t> occ(static_cast<std::size_t>(n), 0);
    int c = spec.K;
    long long t = spec.shifted_weight();
    for (int i = 1; i <= n && c > 0; ++i) {
      const Count& here = suffix.get(i, c, t);
      const Count take = suffix.get(i + 1, c - 1, t - i);
      if (take == 0) continue;
      if (take == here || uniform_below(here, rng) < take) {
        occ[i - 1] = 1;
        --c;
        t -= i;
      }
    }
    out.emplace_back(spec.ell, std::move(occ));
  }
  return out;
}

ParticleConfig staircase_config(const CanonicalSpec& spec) {
  require_feasible(spec, "staircase_config");
  const int ell = spec.ell;
  const int K = spec.K;
  // start packed at the left edge, then push particles right, rightmost first
  std::vector<long long> pos(static_cast<std::size_t>(K));
  long long sum = 0;
  for (int j = 0; j < K; ++j) {
    pos[j] = -ell + j;
    sum += pos[j];
  }
  long long deficit = spec.M - sum;
  for (int j = K - 1; j >= 0 && deficit > 0; --j) {
    const long long room = (ell - (K - 1 - j)) - pos[j];
    const long long shift = std::min(deficit, room);
    pos[j] += shift;
    deficit -= shift;
  }
  std::vector<std::uint8_t> occ(static_cast<std::size_t>(spec.sites()), 0);
  for (auto p : pos) occ[static_cast<std::size_t>(p + ell)] = 1;
  return ParticleConfig(ell, std::move(occ));
}

namespace {

// Chain state: occupancy plus particle positions for uniform pair picks.
class PairMoveChain {
 public:
  PairMoveChain(const ParticleConfig& start, std::mt19937_64 rng)
      : ell_(start.ell), occ_(start.occupancy), rng_(std::move(rng)) {
    for (int i = 0; i < static_cast<int>(occ_.size()); ++i) {
      if (occ_[i]) positions_.push_back(i);
    }
  }

  // One proposal: particle A steps by d, particle B by -d.
  void step() {
    const auto k = positions_.size();
    if (k < 2) return;
    std::uniform_int_distribution<std::size_t> pick(0, k - 1);
    const std::size_t ia = pick(rng_);
    std::size_t ib = pick(rng_);
    while (ib == ia) ib = pick(rng_);
    const int d = (rng_() & 1u) ? 1 : -1;
    const int a_to = positions_[ia] + d;
    const int b_to = positions_[ib] - d;
    const int n = static_cast<int>(occ_.size());
    if (a_to < 0 || a_to >= n || b_to < 0 || b_to >= n) return;
    if (a_to == b_to || occ_[a_to] || occ_[b_to]) return;
    occ_[positions_[ia]] = 0;
    occ_[positions_[ib]] = 0;
    occ_[a_to] = 1;
    occ_[b_to] = 1;
    positions_[ia] = a_to;
    positions_[ib] = b_to;
  }

  void sweep() {
    for (std::size_t i = 0; i < occ_.size(); ++i) step();
  }

  ParticleConfig snapshot() const { return ParticleConfig(ell_, occ_); }

 private:
  int ell_;
  std::vector<std::uint8_t> occ_;
  std::vector<int> positions_;
  std::mt19937_64 rng_;
};

}  // namespace

std::vector<ParticleConfig> sample_mcmc(const CanonicalSpec& spec, std::uint64_t seed,
                                        const McmcOptions& opts, std::size_t count) {
  require_feasible(spec, "sample_mcmc");
  if (opts.chains < 1) throw Error(ErrorKind::OutOfDomain, "sample_mcmc: need chains >= 1");
  const ParticleConfig start = staircase_config(spec);
  const auto chains = static_cast<std::size_t>(opts.chains);
  const long long n = spec.sites();
  const long long sweeps = opts.sweeps >= 0 ? opts.sweeps : std::max(10000LL, n * n / 4);
  const long long burn_in = opts.burn_in >= 0 ? opts.burn_in : sweeps / 2;

  std::vector<ParticleConfig> out;
  out.reserve(count);
  for (std::size_t c = 0; c < chains; ++c) {
    const std::size_t quota = count / chains + (c < count % chains ? 1 : 0);
    if (quota == 0) continue;
    long long thin = opts.thin;
    if (thin <= 0) {
      thin = std::max(1LL, (sweeps - burn_in) / static_cast<long long>(quota));
    }
    PairMoveChain chain(start, make_rng(seed, c));
    for (long long s = 0; s < burn_in; ++s) chain.sweep();
    for (std::size_t q = 0; q < quota; ++q) {
      for (long long s = 0; s < thin; ++s) chain.sweep();
      out.push_back(chain.snapshot());
    }
  }
  return out;
}

}  // namespace eqens
