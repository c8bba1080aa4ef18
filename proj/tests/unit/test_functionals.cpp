// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sausage/errors.hpp"
#include "sausage/functionals.hpp"
#include "sausage/kernels.hpp"

namespace sausage {
namespace {

Point4 at(double x, double y = 0.0) {
  Point4 p;
  p.x = {x, y, 0.0, 0.0};
  return p;
}

TEST(DFunctionalTest, ZeroHorizonIsZero) {
  RngStream rng(400);
  EXPECT_EQ(d0_functional(rng, Point4{}, 0.0, 0.01).value, 0.0);
  EXPECT_THROW(d0_functional(rng, Point4{}, 0.001, 0.01), PreconditionError);
}

TEST(DFunctionalTest, BoundedByHalfTheHorizon) {
  // G* <= 1/2 everywhere.
  RngStream rng(401);
  for (int i = 0; i < 200; ++i) {
    const double v = d0_functional(rng, Point4{}, 5.0, 0.01).value;
    ASSERT_GT(v, 0.0);
    ASSERT_LE(v, 2.5 + 1e-12);
  }
}

TEST(DFunctionalTest, MeanMatchesQuadrature) {
  const double t = 100.0;
  const double ref = oracle::expected_d0(t);
  for (StepRule rule : {StepRule::Fixed, StepRule::Adaptive}) {
    RngStream rng(402);
    MeanAccumulator m;
    for (int i = 0; i < 3000; ++i) m.add(d0_functional(rng, Point4{}, t, 0.01, rule).value);
    EXPECT_TRUE(m.estimate(0).within(ref, 3.0))
        << static_cast<int>(rule) << ": " << m.mean() << " +- " << m.std_error() << " vs " << ref;
  }
}

TEST(DFunctionalTest, SecondMomentIsComparableToSquaredMean) {
  RngStream rng(403);
  MeanAccumulator m, m2;
  for (int i = 0; i < 2000; ++i) {
    const double v = d0_functional(rng, Point4{}, 100.0, 0.01, StepRule::Adaptive).value;
    m.add(v);
    m2.add(v * v);
  }
  EXPECT_LE(m2.mean(), 2.5 * m.mean() * m.mean());
}

TEST(DFunctionalTest, SharedPathEvaluatesSeveralPoints) {
  RngStream a(404), b(404);
  const Point4 xs[2] = {Point4{}, at(2.0)};
  const DFunctionals d = d_functionals(a, 10.0, 0.01, xs);
  EXPECT_DOUBLE_EQ(d.dx[0], d.d0);
  const DFunctionals single = d_functionals(b, 10.0, 0.01, {});
  EXPECT_DOUBLE_EQ(single.d0, d.d0);
  EXPECT_EQ(d.steps, 1000u);
  EXPECT_GT(d.zeta, 0.0);
  EXPECT_LE(d.zeta, 10.0 + 1e-9);
}

TEST(DFunctionalTest, WorkerCountDoesNotChangeConcentration) {
  RngStream a(405), b(405);
  const Concentration c1 = d0_concentration(a, 10.0, 1000, 0.01, StepRule::Adaptive, 1);
  const Concentration c4 = d0_concentration(b, 10.0, 1000, 0.01, StepRule::Adaptive, 4);
  EXPECT_EQ(c1.samples, c4.samples);
  EXPECT_EQ(c1.mean, c4.mean);
  EXPECT_EQ(c1.quantiles.size(), 5u);
  EXPECT_GT(c1.skewness, 0.0);
}

TEST(DFunctionalTest, ConcentrationSummary) {
  const Concentration c = summarize_concentration({1.0, 1.0, 1.0, 5.0}, 7);
  EXPECT_DOUBLE_EQ(c.mean, 2.0);
  EXPECT_DOUBLE_EQ(c.within_25, 0.0);
  EXPECT_GT(c.skewness, 0.0);
  EXPECT_THROW(summarize_concentration({1.0}, 0), PreconditionError);
}

TEST(SkeletonFunctionalTest, SingleBallSkeleton) {
  PathSkeleton s;
  s.delta = 0.5;
  s.horizon = 0.2;
  s.next_exit = 0.3;
  s.points = {at(1.0)};
  s.times = {0.0};
  const Point4 x = at(3.0);
  EXPECT_DOUBLE_EQ(dx_delta_functional(s, x).value, 0.2 * gstar(2.0));
}

TEST(SkeletonFunctionalTest, ConvergesToPathIntegral) {
  // |G*(a) - G*(b)| <= |a - b| / 2, and the path stays within delta of the
  // current skeleton point between exits.
  RngStream rng(406);
  const double t = 10.0, h = 1e-4;
  const Point4 x = at(0.5, 0.5);
  for (int k = 0; k < 3; ++k) {
    const auto path = gauss_step_path(rng, Point4{}, t, h);
    const double exact = d_along_path(path, x);
    double prev_err = INFINITY;
    for (double delta : {0.2, 0.02}) {
      const PathSkeleton s = skeleton_from_path(path, delta);
      const double approx = dx_delta_functional(s, x).value;
      const double err = std::abs(approx - exact);
      EXPECT_LE(err, 0.5 * delta * t + 0.5 * h * static_cast<double>(s.size()));
      prev_err = err;
    }
    EXPECT_LT(prev_err / exact, 0.02);
  }
}

TEST(PairFunctionalTest, ZeroHorizonIsZero) {
  RngStream rng(410);
  EXPECT_EQ(r_pair_functional(rng, at(3.0), 0.0, 100.0, 0.01).value, 0.0);
  EXPECT_THROW(r_pair_functional(rng, at(3.0), 1.0, 100.0, 2.0), PreconditionError);
}

TEST(PairFunctionalTest, SymmetricInTheTwoPaths) {
  // Equal horizons: swapping the paths' roles leaves the law unchanged.
  RngStream a(411), b(412);
  MeanAccumulator ma, mb;
  for (int i = 0; i < 4000; ++i) {
    ma.add(pair_occupation(a, Point4{}, at(2.0), 1.0, 1.0, 0.01).value);
    mb.add(pair_occupation(b, at(2.0), Point4{}, 1.0, 1.0, 0.01).value);
  }
  EXPECT_LT(std::abs(ma.mean() - mb.mean()), 3.0 * std::hypot(ma.std_error(), mb.std_error()));
}

TEST(PairFunctionalTest, MeanMatchesQuadrature) {
  const double z = 3.0, t = 1.0;
  const double ref = oracle::expected_pair_occupation(z, t);
  RngStream rng(413);
  MeanAccumulator m;
  for (int i = 0; i < 20000; ++i) m.add(r_pair_functional(rng, at(z), t, 1e4, 0.01).value);
  // Truncating the second path at 1e4 loses about t / (8e4).
  EXPECT_LT(std::abs(m.mean() - ref), 3.0 * m.std_error() + t / 8e4) << m.mean() << " vs " << ref;
}

TEST(PairFunctionalTest, StableUnderStepHalving) {
  RngStream a(414), b(415);
  MeanAccumulator coarse, fine;
  for (int i = 0; i < 10000; ++i) {
    coarse.add(r_pair_functional(a, at(3.0), 1.0, 1e3, 0.02).value);
    fine.add(r_pair_functional(b, at(3.0), 1.0, 1e3, 0.01).value);
  }
  EXPECT_LT(std::abs(coarse.mean() - fine.mean()), 3.0 * std::hypot(coarse.std_error(), fine.std_error()))
      << coarse.mean() << " vs " << fine.mean();
}

}  // namespace
}  // namespace sausage
