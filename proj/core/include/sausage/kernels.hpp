// SPDX-License-Identifier: Apache-2.0
//
// Closed-form potential theory of standard Brownian motion in R^4
// (generator Laplacian/2, transition density exp(-|x|^2/2s)/(4 pi^2 s^2)).
#pragma once

#include <numbers>

#include "sausage/point4.hpp"

namespace sausage {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPiSq = 2.0 * kPi * kPi;
/// Cap(B(0,1)) in R^4.
inline constexpr double kUnitBallCapacity = kTwoPiSq;
/// |B(0,1)| in R^4.
inline constexpr double kUnitBallVolume = kPi * kPi / 2.0;
/// Limit of (log t / t) Cap(W_r[0,t]).
inline constexpr double kLlnConstant = 4.0 * kPi * kPi;

/// Green's function 1/(2 pi^2 |x|^2). Throws DomainError at the origin.
double green_g(const Point4& x);

/// Radial form of green_g. Throws DomainError for rho <= 0.
double green_radial(double rho);

/// Unit-ball averaged potential G*(z) = integral of G over B(z,1), as a
/// function of rho = |z|:
///   1/2 - rho^2/4   for rho <= 1,
///   1/(4 rho^2)     for rho > 1.
/// Throws DomainError for negative rho.
double gstar(double rho);

/// P_z(hit B(0,r)) = min(1, r^2/|z|^2).
double ball_hit_prob(const Point4& z, double r);

/// Upper bound Cap(A) / (2 pi^2 d(z,A)^2) on P_z(hit A).
double cond_hit_bound(const Point4& z, double cap_estimate, double dist);

/// Cap(B(0,r)) = 2 pi^2 r^2.
constexpr double ball_capacity(double r) { return kTwoPiSq * r * r; }

/// |B(0,r)| = pi^2 r^4 / 2.
constexpr double ball_volume(double r) { return kUnitBallVolume * r * r * r * r; }

}  // namespace sausage
