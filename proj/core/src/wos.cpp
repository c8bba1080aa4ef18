// SPDX-License-Identifier: Apache-2.0
#include "sausage/wos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sausage/errors.hpp"

namespace sausage {
namespace {

constexpr double kMinWeight = 1e-3;

}  // namespace

void WosParams::validate(double ball_radius) const {
  if (!(eps_hit > 0.0)) throw PreconditionError("WosParams: eps_hit must be positive");
  if (!(eps_hit < ball_radius)) throw PreconditionError("WosParams: eps_hit must be below the ball radius");
  if (!(escape_factor > 2.0)) throw PreconditionError("WosParams: escape radius must exceed the launch radius");
  if (max_steps == 0) throw PreconditionError("WosParams: max_steps must be positive");
}

HitOutcome wos_hit(RngStream& rng, const Point4& z, const BallUnion& a, const BallUnion* b,
                   const Ball& sphere, const WosParams& params) {
  HitOutcome out;
  out.position = z;
  const bool has_b = b != nullptr && !b->empty();
  if (a.empty() && !has_b) return out;

  const double inf = std::numeric_limits<double>::infinity();
  const double r_escape = params.r_escape(sphere.radius);
  const double r_escape2 = r_escape * r_escape;
  const double eps = params.eps_hit;

  double da = a.dist(z);
  double db = has_b ? b->dist(z) : inf;
  if (da < 0.0 || db < 0.0) throw PreconditionError("wos_hit: start point inside a union");

  Point4 x = z;
  for (std::uint64_t step = 0;; ++step) {
    if (step > 0) {
      da = a.dist(x);
      db = has_b ? b->dist(x) : inf;
    }
    const bool near_a = da <= eps;
    const bool near_b = db <= eps;
    if (near_a || near_b) {
      out.kind = near_a && near_b ? HitKind::HitTie : (near_a ? HitKind::HitA : HitKind::HitB);
      out.position = x;
      out.steps = step;
      return out;
    }
    if (step >= params.max_steps) {
      out.kind = HitKind::Escaped;
      out.truncated = true;
      out.position = x;
      out.steps = step;
      return out;
    }
    x = sphere_sample(rng, x, std::min(da, db));

    const double x2 = norm2(x);
    if (x2 > r_escape2) {
      const double p_return = (sphere.radius * sphere.radius) / x2;
      if (params.restart_mode == RestartMode::RussianRoulette) {
        if (rng.uniform() >= p_return) {
          out.kind = HitKind::Escaped;
          out.position = x;
          out.steps = step + 1;
          out.weight = 0.0;
          return out;
        }
      } else {
        out.weight *= p_return;
        if (out.weight < kMinWeight) {
          if (rng.uniform() * kMinWeight >= out.weight) {
            out.kind = HitKind::Escaped;
            out.position = x;
            out.steps = step + 1;
            out.weight = 0.0;
            return out;
          }
          out.weight = kMinWeight;
        }
      }
      x = sphere_sample(rng, sphere.center, sphere.radius);
    }
  }
}

TimedHit timed_hit(RngStream& rng, const Point4& z, const BallUnion& a, double horizon, double eps_hit,
                   std::uint64_t max_steps, const ExitTimeLaw& law) {
  TimedHit out;
  if (a.empty()) return out;
  if (a.dist(z) < 0.0) throw PreconditionError("timed_hit: start point inside the union");
  Point4 x = z;
  double s = 0.0;
  for (std::uint64_t step = 0;; ++step) {
    const double d = a.dist(x);
    if (d <= eps_hit) {
      out.hit = true;
      out.time = s;
      out.position = x;
      out.steps = step;
      return out;
    }
    if (step >= max_steps) {
      out.truncated = true;
      out.steps = step;
      out.position = x;
      return out;
    }
    s += d * d * law.sample(rng);
    x = sphere_sample(rng, x, d);
    if (s > horizon) {
      out.steps = step + 1;
      out.time = s;
      out.position = x;
      return out;
    }
  }
}

}  // namespace sausage
