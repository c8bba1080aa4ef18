// SPDX-License-Identifier: Apache-2.0
#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "sausage/ball_union.hpp"
#include "sausage/brownian.hpp"
#include "sausage/errors.hpp"
#include "sausage/rng.hpp"

namespace sausage {
namespace {

Point4 on_axis(double r, std::size_t axis = 0) {
  Point4 p{};
  p[axis] = r;
  return p;
}

std::vector<Point4> gaussian_cloud(RngStream& rng, std::size_t n, double scale) {
  std::vector<Point4> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(scale * rng.normal4());
  return v;
}

TEST(BallTest, RejectsNonPositiveRadius) {
  EXPECT_THROW(Ball(Point4{}, 0.0), PreconditionError);
  EXPECT_THROW(Ball(Point4{}, -1.0), PreconditionError);
  EXPECT_TRUE(Ball(Point4{}, 1.0).contains(on_axis(1.0)));
}

TEST(BallUnionTest, SingleBallDistances) {
  const BallUnion u({Point4{}}, 1.0);
  EXPECT_DOUBLE_EQ(u.dist(on_axis(3.0)), 2.0);
  EXPECT_DOUBLE_EQ(u.dist(Point4{}), -1.0);
  EXPECT_DOUBLE_EQ(u.bounding_radius(), 1.0);
}

TEST(BallUnionTest, EmptyUnionIsInfinitelyFar) {
  const BallUnion u;
  EXPECT_TRUE(u.empty());
  EXPECT_EQ(u.dist(Point4{}), std::numeric_limits<double>::infinity());
  EXPECT_FALSE(u.nearest(Point4{}).has_value());
  EXPECT_FALSE(u.contains(Point4{}));
  EXPECT_EQ(u.count_within(Point4{}, 10.0), 0u);
}

TEST(BallUnionTest, RandomCloudMatchesBruteForceBitwise) {
  RngStream rng(17);
  const BallUnion u(gaussian_cloud(rng, 1000, 5.0), 1.0);
  for (int i = 0; i < 1000; ++i) {
    const Point4 q = 8.0 * rng.normal4();
    ASSERT_EQ(u.dist(q), u.dist_brute_force(q));
  }
}

TEST(BallUnionTest, ManySmallUnionsMatchBruteForce) {
  RngStream rng(18);
  for (int k = 0; k < 10000; ++k) {
    const auto n = 1 + static_cast<std::size_t>(rng.uniform() * 60.0);
    const double radius = 0.1 + rng.uniform();
    const BallUnion u(gaussian_cloud(rng, n, 3.0), radius);
    const Point4 q = 4.0 * rng.normal4();
    ASSERT_EQ(u.dist(q), u.dist_brute_force(q));
  }
}

TEST(BallUnionTest, DenseSkeletonMatchesBruteForce) {
  RngStream rng(19);
  const PathSkeleton sk = sample_skeleton(rng, Point4{}, 50.0, 0.1);
  const BallUnion u = build_sausage(sk, 1.0);
  for (int i = 0; i < 2000; ++i) {
    // Mix of queries near the path and far from it.
    const Point4 q = i % 2 ? sk.points[static_cast<std::size_t>(rng.uniform() * sk.size())] + rng.normal4()
                           : 30.0 * rng.normal4();
    ASSERT_EQ(u.dist(q), u.dist_brute_force(q));
  }
}

TEST(BallUnionTest, NearestAndCountsAgreeWithScan) {
  RngStream rng(20);
  const BallUnion u(gaussian_cloud(rng, 500, 2.0), 0.5);
  for (int i = 0; i < 500; ++i) {
    const Point4 q = 3.0 * rng.normal4();
    const auto nn = u.nearest(q);
    ASSERT_TRUE(nn.has_value());
    double best = std::numeric_limits<double>::infinity();
    std::size_t count = 0;
    for (const auto& c : u.centers()) {
      best = std::min(best, dist(q, c));
      count += dist(q, c) <= 1.3;
    }
    EXPECT_EQ(nn->center_dist, best);
    EXPECT_EQ(dist(q, u.centers()[nn->index]), best);
    EXPECT_EQ(u.count_within(q, 1.3), count);
    EXPECT_EQ(u.any_within(q, 1.3), count > 0);
    EXPECT_EQ(u.contains(q), best <= 0.5);
  }
}

TEST(BallUnionTest, CenterIsAtMinusRadius) {
  RngStream rng(21);
  const BallUnion u(gaussian_cloud(rng, 50, 10.0), 0.75);
  for (const auto& c : u.centers()) EXPECT_LE(u.dist(c), -0.75 + 1e-15);
}

TEST(BallUnionTest, BoundingRadiusCoversEveryBall) {
  RngStream rng(22);
  const BallUnion u(gaussian_cloud(rng, 300, 4.0), 1.25);
  for (const auto& c : u.centers()) EXPECT_GE(u.bounding_radius(), norm(c) + 1.25);
  const BallUnion w = u.with_radius(2.0);
  EXPECT_NEAR(w.bounding_radius(), u.bounding_radius() + 0.75, 1e-12);
  EXPECT_EQ(w.size(), u.size());
}

TEST(BallUnionTest, DuplicateCentersAreHarmless) {
  std::vector<Point4> c(40, on_axis(2.0));
  const BallUnion u(c, 1.0);
  EXPECT_DOUBLE_EQ(u.dist(Point4{}), 1.0);
  EXPECT_EQ(u.count_within(on_axis(2.5), 1.0), 40u);
}

}  // namespace
}  // namespace sausage
