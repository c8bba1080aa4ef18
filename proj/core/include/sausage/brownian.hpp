// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sausage/ball_union.hpp"
#include "sausage/estimate.hpp"
#include "sausage/point4.hpp"
#include "sausage/rng.hpp"

namespace sausage {

struct TimedPoint {
  double time;
  Point4 pos;
};

/// Brownian positions at times 0, h, 2h, ..., ceil(t/h) h with independent
/// N(0, h I) increments. Throws ConfigError unless 0 < h <= t.
std::vector<TimedPoint> gauss_step_path(RngStream& rng, const Point4& start, double t, double h);

/// Step used by sample_exit_time_unit_ball.
inline constexpr double kExitStep = 1e-3;

/// First exit time of standard Brownian motion from B(0,1), started at 0,
/// by Gaussian stepping with step h_exit. The crossing instant is linearly
/// interpolated in |x|, and excursions that leave and re-enter between two
/// interior samples are caught with the Brownian-bridge crossing
/// probability exp(-2ab/h) (a, b = distances to the sphere).
double sample_exit_time_unit_ball(RngStream& rng, double h_exit = kExitStep);

/// Inverse-CDF table of the exit-time law produced by
/// sample_exit_time_unit_ball. Draws cost O(1), which is what makes
/// multi-million point skeletons affordable. The table is built once per
/// process from a fixed internal stream.
class ExitTimeLaw {
 public:
  explicit ExitTimeLaw(std::size_t samples, std::uint64_t seed = 0x5eedu, double h_exit = kExitStep);

  /// Shared instance with 2^17 samples.
  static const ExitTimeLaw& standard();

  double sample(RngStream& rng) const;
  /// Mean of the tabulated law (trapezoidal over the quantile function).
  double mean() const noexcept { return mean_; }
  std::span<const double> quantiles() const noexcept { return sorted_; }

 private:
  std::vector<double> sorted_;
  double mean_ = 0.0;
};

/// Positions and times at which the path leaves successive balls of radius
/// delta. points[0] is the start at time 0; |points[i] - points[i-1]| = delta.
/// Only entries with times[i] <= horizon are kept; next_exit is the first
/// exit time past the horizon.
struct PathSkeleton {
  std::vector<Point4> points;
  std::vector<double> times;
  double delta = 0.0;
  double horizon = 0.0;
  double next_exit = 0.0;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
  /// Time spent in ball i before the horizon: min(tau_{i+1}, t) - tau_i.
  double occupation(std::size_t i) const;
  /// Sub-skeleton of entries with begin <= times[i] < end (end inclusive
  /// when end >= horizon).
  PathSkeleton slice(double begin, double end) const;
};

/// Exact-position skeleton: each Z_{i+1} is uniform on the sphere of radius
/// delta around Z_i and each gap is delta^2 times an independent unit-ball
/// exit time. Stops at the first exit past t.
PathSkeleton sample_skeleton(RngStream& rng, const Point4& start, double t, double delta,
                             const ExitTimeLaw& law = ExitTimeLaw::standard());

/// Skeleton read off a discretized path; exit points are interpolated onto
/// the delta-sphere. Used to couple skeleton functionals with fine-step
/// functionals of the same path.
PathSkeleton skeleton_from_path(std::span<const TimedPoint> path, double delta);

/// Union of balls of radius r around every skeleton point.
BallUnion build_sausage(const PathSkeleton& skeleton, double r);

/// Dyadic crossing record: tau[i] = first time |beta| > 2^i, y[i] = integral
/// of G(beta) over [tau[i], tau[i+1]], n_t = max{i : tau[i] <= t} (-1 if
/// the unit ball was not left by t).
struct ShellRecord {
  std::vector<double> tau;
  std::vector<double> y;
  int n_t = -1;
  std::uint64_t clip_count = 0;

  /// sum_{i <= n_t} y[i].
  double d_sum() const;
};

/// Integrand ceiling for the shell functionals.
inline constexpr double kGreenClip = 1e6;

/// Simulates a path from 0 until the first dyadic crossing after t. Uses a
/// scale-similar step: h/4 before tau_0 and h 4^i between tau_i and
/// tau_{i+1}, so every Y_i is discretized identically in law.
/// Requires 0 < h <= 0.01.
ShellRecord dyadic_shell_record(RngStream& rng, double t, double h);

/// Same scheme, run until `count` shell functionals Y_0..Y_{count-1} exist
/// (time horizon ignored).
ShellRecord shell_functionals(RngStream& rng, int count, double h);

/// Hit-or-miss volume of the union. Probes are uniform over the cover made
/// of grid cells (edge = radius) within one cell of a center's cell; the
/// cover volume is exact so the estimate is fraction * cover volume.
Estimate volume_estimate(RngStream& rng, const BallUnion& u, std::uint64_t n_probe);

/// volume_estimate of build_sausage(skeleton, r). Requires n_probe >= 1000.
Estimate sausage_volume_estimate(RngStream& rng, const PathSkeleton& skeleton, double r,
                                 std::uint64_t n_probe);

}  // namespace sausage
