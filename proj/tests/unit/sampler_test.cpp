#include <cmath>
#include <map>

#include <gtest/gtest.h>

#include "eqens/ensemble.hpp"
#include "eqens/error.hpp"
#include "oracles.hpp"

namespace eqens {
namespace {

using Histogram = std::map<std::vector<std::uint8_t>, long long>;

Histogram histogram(const std::vector<ParticleConfig>& samples) {
  Histogram h;
  for (const auto& s : samples) ++h[s.occupancy];
  return h;
}

double tv_to_uniform(const Histogram& h, const std::vector<ParticleConfig>& cls,
                     std::size_t total) {
  double tv = 0.0;
  const double u = 1.0 / static_cast<double>(cls.size());
  for (const auto& c : cls) {
    const auto it = h.find(c.occupancy);
    const double f = it == h.end() ? 0.0 : static_cast<double>(it->second) / total;
    tv += std::abs(f - u);
  }
  return 0.5 * tv;
}

TEST(SampleExact, UniqueElement) {
  for (const auto& s : sample_exact({1, 1, 0}, 5, 20)) {
    EXPECT_EQ(s.occupancy, (std::vector<std::uint8_t>{0, 1, 0}));
  }
}

TEST(SampleExact, DeterministicGivenSeed) {
  const CanonicalSpec spec{20, 15, -31};
  EXPECT_EQ(sample_exact(spec, 9, 50), sample_exact(spec, 9, 50));
  EXPECT_NE(sample_exact(spec, 9, 50), sample_exact(spec, 10, 50));
}

TEST(SampleExact, EveryConfigurationEquallyLikely) {
  const CanonicalSpec spec{4, 3, 0};
  const auto cls = oracle::enumerate_class(spec);
  ASSERT_EQ(Count(cls.size()), count(spec));
  const std::size_t N = 100000;
  const auto h = histogram(sample_exact(spec, 2024, N));
  EXPECT_EQ(h.size(), cls.size());
  const double p = 1.0 / cls.size();
  const double sigma = std::sqrt(N * p * (1 - p));
  for (const auto& c : cls) {
    EXPECT_NEAR(static_cast<double>(h.at(c.occupancy)), N * p, 3 * sigma);
  }
}

TEST(SampleExact, OneSiteMarginalsMatchExact) {
  const CanonicalSpec spec{4, 4, -2};
  const std::size_t N = 100000;
  const auto samples = sample_exact(spec, 77, N);
  for (int k = -4; k <= 4; ++k) {
    long long hits = 0;
    for (const auto& s : samples) hits += s.at(k);
    const SiteConstraint c[] = {{k, 1}};
    const double p = exact_marginal(spec, c).probability();
    const double sigma = std::sqrt(N * p * (1 - p));
    EXPECT_NEAR(static_cast<double>(hits), N * p, 4 * sigma + 1e-9) << k;
  }
}

TEST(SampleExact, PreservesConstraintsAtLargeWindow) {
  const auto spec = CanonicalSpec::from_macro(80, {0.35, -0.04});
  for (const auto& s : sample_exact(spec, 1, 20)) {
    EXPECT_EQ(s.particle_count(), spec.K);
    EXPECT_EQ(s.moment(), spec.M);
  }
}

TEST(SampleExact, Errors) {
  EXPECT_THROW(sample_exact({3, 2, 50}, 1, 1), Error);
  try {
    sample_exact({81, 10, 0}, 1, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
  }
}

TEST(Staircase, IsFeasibleStart) {
  for (int ell = 1; ell <= 6; ++ell) {
    for (int K = 0; K <= 2 * ell + 1; ++K) {
      const CanonicalSpec probe{ell, K, 0};
      for (long long M = -probe.max_abs_moment(); M <= probe.max_abs_moment(); ++M) {
        const auto c = staircase_config({ell, K, M});
        EXPECT_EQ(c.particle_count(), K);
        EXPECT_EQ(c.moment(), M);
      }
    }
  }
}

TEST(SampleMcmc, ConvergesToUniformLaw) {
  const CanonicalSpec spec{4, 3, 0};
  const auto cls = oracle::enumerate_class(spec);
  McmcOptions opts;
  opts.sweeps = 1000000;
  const std::size_t N = 200000;
  const auto samples = sample_mcmc(spec, 31, opts, N);
  ASSERT_EQ(samples.size(), N);
  EXPECT_LT(tv_to_uniform(histogram(samples), cls, N), 0.01);
}

TEST(SampleMcmc, ReachesEveryConfigurationOfSmallClasses) {
  // ergodicity of the pair moves on every class at l = 3
  for (int K = 2; K <= 5; ++K) {
    const CanonicalSpec probe{3, K, 0};
    for (long long M = -probe.max_abs_moment(); M <= probe.max_abs_moment(); ++M) {
      const CanonicalSpec spec{3, K, M};
      McmcOptions opts;
      opts.sweeps = 4000;
      const auto h = histogram(sample_mcmc(spec, 3, opts, 2000));
      EXPECT_EQ(Count(h.size()), count(spec)) << K << " " << M;
    }
  }
}

TEST(SampleMcmc, ChainsAreDeterministicAndPreserveConstraints) {
  const auto spec = CanonicalSpec::from_macro(30, {0.5, 0.05});
  McmcOptions opts;
  opts.sweeps = 200;
  opts.chains = 3;
  const auto a = sample_mcmc(spec, 8, opts, 10);
  EXPECT_EQ(a, sample_mcmc(spec, 8, opts, 10));
  ASSERT_EQ(a.size(), 10u);
  for (const auto& s : a) {
    EXPECT_EQ(s.particle_count(), spec.K);
    EXPECT_EQ(s.moment(), spec.M);
  }
}

TEST(SampleMcmc, PositiveMomentPushesParticlesRight) {
  const auto spec = CanonicalSpec::from_macro(200, {0.5, 0.1 * 0.25});
  McmcOptions opts;
  opts.sweeps = 2000;
  const auto samples = sample_mcmc(spec, 4, opts, 20);
  double imbalance = 0.0;
  for (const auto& s : samples) {
    for (int k = 1; k <= 200; ++k) imbalance += s.at(k) - s.at(-k);
  }
  EXPECT_GT(imbalance / samples.size(), 0.0);
}

}  // namespace
}  // namespace eqens
