#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "eqens/curve.hpp"
#include "eqens/error.hpp"
#include "eqens/inversion.hpp"
#include "eqens/young.hpp"
#include "oracles.hpp"

namespace eqens {
namespace {

ParticleConfig random_config(int ell, std::mt19937_64& rng) {
  std::vector<std::uint8_t> occ(static_cast<std::size_t>(2 * ell + 1));
  for (auto& b : occ) b = rng() & 1u;
  return ParticleConfig(ell, std::move(occ));
}

TEST(HeightFunction, TwoParticleExample) {
  const HeightFunction h(ParticleConfig(1, {1, 0, 1}));
  EXPECT_EQ(h(-2.0), 2);
  EXPECT_EQ(h(-1.0), 1);
  EXPECT_EQ(h(0.0), 1);
  EXPECT_EQ(h(1.0), 0);
  EXPECT_EQ(h(-1.5), 2);
  EXPECT_EQ(h(0.999), 1);
  EXPECT_EQ(h.area(), 4);
  EXPECT_EQ(h.cells(), (std::vector<int>{2, 1, 1}));
}

TEST(HeightFunction, EmptyAndFull) {
  const HeightFunction empty(ParticleConfig(3, std::vector<std::uint8_t>(7, 0)));
  for (int c : empty.cells()) EXPECT_EQ(c, 0);
  const int ell = 5;
  const HeightFunction full(ParticleConfig(ell, std::vector<std::uint8_t>(11, 1)));
  for (int u = -ell - 1; u <= ell; ++u) EXPECT_EQ(full(u), ell - u);
  EXPECT_EQ(full.area(), (ell + 1) * (2 * ell + 1));
}

TEST(HeightFunction, AreaAndBoundaryIdentities) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 10000; ++i) {
    const int ell = 1 + static_cast<int>(rng() % 40);
    const auto c = random_config(ell, rng);
    const HeightFunction h(c);
    EXPECT_EQ(h.area(), static_cast<long long>(ell + 1) * c.particle_count() + c.moment());
    EXPECT_EQ(h(-ell - 1.0), c.particle_count());
    EXPECT_EQ(h(static_cast<double>(ell)), 0);
  }
}

TEST(ScaledHeight, BoundaryValuesAndMonotone) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    const int ell = 3 + static_cast<int>(rng() % 50);
    const auto c = random_config(ell, rng);
    const HeightFunction h(c);
    const auto s = scaled_height(h, 257);
    EXPECT_EQ(s.size(), 257u);
    EXPECT_EQ(s(1.0), 0.0);
    const double K = c.particle_count();
    EXPECT_GE(s(-1.0), (K - 1) / ell);
    EXPECT_LE(s(-1.0), K / ell);
    for (std::size_t j = 1; j < s.size(); ++j) EXPECT_LE(s.y()[j], s.y()[j - 1]);
    const auto exact = scaled_height_steps(h);
    for (double x : s.x()) EXPECT_DOUBLE_EQ(exact(x), s(x));
  }
  EXPECT_THROW(scaled_height(HeightFunction(ParticleConfig(1, {0, 1, 0})), 1), Error);
}

TEST(LimitCurve, FlatProfileIsLinear) {
  const ProfileParams p(0.3, 0.0);
  for (double x : {-1.0, -0.2, 0.5, 1.0}) EXPECT_NEAR(limit_height(x, p), 0.3 * (1 - x), 1e-15);
}

TEST(LimitCurve, BoundaryValuesAndArea) {
  for (double b : {-25.0, -2.0, 1e-4, 0.7, 9.0}) {
    for (double a : {0.15, 0.5, 0.8}) {
      const ProfileParams p(a, b);
      const auto s = forward_map(p);
      EXPECT_NEAR(limit_height(1.0, p), 0.0, 1e-15);
      EXPECT_NEAR(limit_height(-1.0, p), 2 * s.rho, 1e-12);
      const double area = oracle::integrate([&](double x) { return limit_height(x, p); }, -1, 1);
      EXPECT_NEAR(area, 2 * s.rho + 4 * s.m, 1e-10);
    }
  }
}

TEST(LimitCurve, SlopeIsMinusProfile) {
  const ProfileParams p(0.4, 3.0);
  const auto c = limit_curve(p, 2001);
  for (std::size_t j = 1; j + 1 < c.size(); j += 50) {
    const double d = (c.y()[j + 1] - c.y()[j - 1]) / (c.x()[j + 1] - c.x()[j - 1]);
    EXPECT_NEAR(d, -beta(c.x()[j], p), 1e-6);
  }
}

TEST(SupDistance, Basics) {
  const auto a = Curve::uniform(-1, 1, 101, Interpolation::Linear, [](double x) { return x * x; });
  const auto b = Curve::uniform(-1, 1, 37, Interpolation::Linear,
                                [](double x) { return x * x + 0.1; });
  EXPECT_EQ(sup_distance(a, a), 0.0);
  EXPECT_NEAR(sup_distance(Curve(a.x(), a.y()), Curve(a.x(), [&] {
                             auto y = a.y();
                             for (auto& v : y) v += 0.1;
                             return y;
                           }())),
              0.1, 1e-15);
  EXPECT_GT(sup_distance(a, b), 0.1 - 1e-12);
  const auto short_curve = Curve::uniform(-1, 0.5, 10, Interpolation::Linear, [](double) { return 0.0; });
  EXPECT_THROW(sup_distance(a, short_curve), Error);
}

TEST(SupDistance, SeesJumpsBetweenGridPoints) {
  // a step at 0.3 that a coarse grid would miss on the right side
  const Curve step({-1.0, 0.3, 1.0}, {1.0, 0.0, 0.0}, Interpolation::Step);
  const Curve zero({-1.0, 1.0}, {0.0, 0.0});
  EXPECT_EQ(sup_distance(step, zero), 1.0);
  const Curve line({-1.0, 1.0}, {1.0, 0.0});  // 0.35 at x = 0.3
  EXPECT_NEAR(sup_distance(step, line), 0.65, 1e-15);
}

TEST(MomentTest, ConservedStatisticsHaveNoSpread) {
  const auto spec = CanonicalSpec::from_macro(30, {0.45, -0.03});
  const auto samples = sample_exact(spec, 3, 50);
  const ProfileParams p = invert(spec.realized()).params;
  const auto one = Curve::uniform(-1, 1, 3, Interpolation::Linear, [](double) { return 1.0; });
  const auto id = Curve::uniform(-1, 1, 3, Interpolation::Linear, [](double x) { return x; });
  const auto s1 = moment_test(samples, one, p);
  EXPECT_NEAR(s1.mean, spec.K / 30.0, 1e-13);
  EXPECT_NEAR(s1.variance, 0.0, 1e-24);
  const auto sx = moment_test(samples, id, p);
  EXPECT_NEAR(sx.mean, static_cast<double>(spec.M) / 900.0, 1e-13);
  EXPECT_NEAR(sx.variance, 0.0, 1e-24);
  EXPECT_NEAR(s1.limit, 2 * forward_map(p).rho, 1e-10);
}

TEST(MomentTest, QuadraticStatisticApproachesLimit) {
  const auto spec = CanonicalSpec::from_macro(200, {0.5, 0.05});
  const auto samples = sample_mcmc(spec, 12, {}, 40);
  const ProfileParams p = invert({0.5, 0.05}).params;
  const auto sq = Curve::uniform(-1, 1, 2001, Interpolation::Linear, [](double x) { return x * x; });
  const auto st = moment_test(samples, sq, p);
  const double ref = oracle::integrate([&](double x) { return x * x * beta(x, p); }, -1, 1);
  EXPECT_NEAR(st.limit, ref, 1e-6);
  EXPECT_NEAR(st.mean, ref, 0.02);
}

TEST(Corollary, McmcHeightApproachesLimitShape) {
  const MacroState target{0.5, 0.05};
  const ProfileParams p = invert(target).params;
  const auto psi = limit_curve(p);
  const auto spec = CanonicalSpec::from_macro(100, target);
  double worst = 0;
  for (const auto& s : sample_mcmc(spec, 1, {}, 10)) {
    worst = std::max(worst, sup_distance(scaled_height_steps(HeightFunction(s)), psi));
  }
  EXPECT_LT(worst, 0.15);
}

}  // namespace
}  // namespace eqens
