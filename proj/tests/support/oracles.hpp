// SPDX-License-Identifier: Apache-2.0
// Independent reference values for the test suites. Nothing here calls the
// closed forms under test; each value comes from a separate route
// (quadrature, brute force, or a different simulation scheme).
#pragma once

#include <cstdint>

#include "sausage/ball_union.hpp"
#include "sausage/estimate.hpp"
#include "sausage/rng.hpp"

namespace oracle {

/// int_{B(z,1)} 1/(2 pi^2 |w|^2) dw for |z| = rho, computed as a radial
/// integral over spheres |w| = s weighted by the fraction of each sphere
/// that lies in B(z,1).
double averaged_potential(double rho);

/// Plain Monte Carlo of the same integral with n uniform points in B(z,1).
sausage::Estimate averaged_potential_mc(double rho, std::uint64_t n, std::uint64_t seed);

/// E int_0^t f(|beta_s|) ds for radial f, by
/// int_0^inf 2 pi^2 rho^3 f(rho) G_t(rho) d rho with
/// G_t(rho) = int_0^t p_s(rho) ds evaluated by quadrature in s.
double expected_radial_occupation(double t, double (*f)(double));

/// E int_0^t G*(|beta_s|) ds using averaged_potential as G*.
double expected_d0(double t);

/// E int_0^inf ds int_0^t du 1(|beta2_s - beta1_u| <= 1) for paths from 0
/// and z, reduced to a one-dimensional shell integral over B(z, 1) of the
/// kernel int_0^inf min(u, t) p_u du (closed form via E1).
double expected_pair_occupation(double z_norm, double t);

/// Hit probability of `target` from z by Gaussian stepping: step
/// min(0.04 d^2, 1) with floor h_min (d = distance to the union), a
/// Brownian-bridge crossing test between steps, and the same
/// roulette-and-restart rule as the walk-on-spheres engine.
sausage::Estimate stepping_hit_probability(const sausage::Point4& z, const sausage::BallUnion& target,
                                           double sphere_radius, double r_escape, double h_min,
                                           std::uint64_t n, std::uint64_t seed);

}  // namespace oracle
