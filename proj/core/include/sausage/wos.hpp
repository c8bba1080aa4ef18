// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "sausage/ball_union.hpp"
#include "sausage/brownian.hpp"
#include "sausage/point4.hpp"
#include "sausage/rng.hpp"

namespace sausage {

enum class RestartMode { RussianRoulette, Weighted };

struct WosParams {
  /// Absorption tolerance, in units of the unit sausage radius.
  double eps_hit = 1e-3;
  /// r_escape = escape_factor * (launch sphere radius) / 2, i.e.
  /// escape_factor times the bounding radius when the launch sphere has the
  /// default radius of twice the bounding radius.
  double escape_factor = 64.0;
  std::uint64_t max_steps = 100000;
  RestartMode restart_mode = RestartMode::RussianRoulette;

  double r_escape(double sphere_radius) const { return 0.5 * escape_factor * sphere_radius; }

  /// Throws PreconditionError unless eps_hit < ball_radius and the escape
  /// radius lies outside the launch sphere.
  void validate(double ball_radius) const;
};

enum class HitKind { HitA, HitB, HitTie, Escaped };

struct HitOutcome {
  HitKind kind = HitKind::Escaped;
  Point4 position;
  std::uint64_t steps = 0;
  /// Product of restart survival probabilities (Weighted mode); 1 otherwise.
  double weight = 1.0;
  /// Walker ran out of max_steps; reported as Escaped.
  bool truncated = false;

  bool hit() const noexcept { return kind != HitKind::Escaped; }
};

/// Walk-on-spheres simulation of the first hit of A u B by Brownian motion
/// from z. Each step jumps to a uniform point on the largest sphere around
/// the walker that avoids both unions; a walker within eps_hit of A (B, both)
/// is classified HitA (HitB, HitTie). Beyond r_escape the walker returns to
/// `sphere` with probability (R/|x|)^2, re-entering uniformly on its surface.
/// `b` may be null. Throws PreconditionError if z lies inside a union.
HitOutcome wos_hit(RngStream& rng, const Point4& z, const BallUnion& a, const BallUnion* b,
                   const Ball& sphere, const WosParams& params);

struct TimedHit {
  bool hit = false;
  double time = 0.0;
  Point4 position;
  std::uint64_t steps = 0;
  bool truncated = false;
};

/// Walk-on-spheres with a clock: each sphere exit of radius d takes
/// d^2 times an independent unit-ball exit time (exit time and exit point
/// are independent for Brownian motion started at the centre). Reports
/// whether the path from z comes within eps_hit of `a` before `horizon`.
TimedHit timed_hit(RngStream& rng, const Point4& z, const BallUnion& a, double horizon, double eps_hit,
                   std::uint64_t max_steps, const ExitTimeLaw& law = ExitTimeLaw::standard());

}  // namespace sausage
