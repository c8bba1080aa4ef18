// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "sausage/ball_union.hpp"
#include "sausage/brownian.hpp"
#include "sausage/estimate.hpp"
#include "sausage/rng.hpp"
#include "sausage/wos.hpp"

namespace sausage {

/// Walker bookkeeping shared by the estimators.
struct WosStats {
  std::uint64_t walkers = 0;
  std::uint64_t truncated = 0;
  std::uint64_t steps = 0;

  void merge(const WosStats& o) {
    walkers += o.walkers;
    truncated += o.truncated;
    steps += o.steps;
  }
  double truncation_rate() const {
    return walkers == 0 ? 0.0 : static_cast<double>(truncated) / static_cast<double>(walkers);
  }
};

/// Execution knobs. Results do not depend on `workers`: walkers are split
/// into fixed chunks, chunk k uses rng.derive(k), partial sums are merged in
/// chunk order.
struct ExecOptions {
  unsigned workers = 1;
  WosStats* stats = nullptr;
};

/// Union of the two center sets (radii must agree).
BallUnion merge_unions(const BallUnion& a, const BallUnion& b);

/// Cap(A) = 2 pi^2 R^2 * P(walker from uniform point on the sphere of
/// radius R hits A), with R = 2 * bounding radius. Requires n >= 1000.
Estimate cap_estimate(RngStream& rng, const BallUnion& a, std::uint64_t n, const WosParams& params,
                      ExecOptions exec = {});

/// Same estimator from a given launch sphere (must contain A).
Estimate cap_estimate_from(RngStream& rng, const BallUnion& a, double sphere_radius, std::uint64_t n,
                           const WosParams& params, ExecOptions exec = {});

/// chi_r(A, B): 2 pi^2 r^2 times the probability of hitting one union and
/// then the other, walkers launched from the sphere of radius r. A walker
/// that first lands in a tie is not counted here.
Estimate chi_estimate(RngStream& rng, const BallUnion& a, const BallUnion& b, double r, std::uint64_t n,
                      const WosParams& params, ExecOptions exec = {});

/// eps_r(A, B): 2 pi^2 r^2 times the tie frequency.
Estimate eps_estimate(RngStream& rng, const BallUnion& a, const BallUnion& b, double r, std::uint64_t n,
                      const WosParams& params, ExecOptions exec = {});

struct DecompTerms {
  Estimate cap_ab;
  Estimate cap_a;
  Estimate cap_b;
  Estimate chi;
  Estimate eps;
  Estimate residual;
  double r = 0.0;
};

/// Cap(A u B) - Cap(A) - Cap(B) + chi_r + eps_r with r = 2 * bounding
/// radius of A u B. Each term uses its own child stream, so the errors are
/// independent and add in quadrature. An empty A or B gives an exact zero.
DecompTerms decomp_terms(RngStream& rng, const BallUnion& a, const BallUnion& b, std::uint64_t n,
                         const WosParams& params, ExecOptions exec = {});

/// decomp_terms(...).residual.
Estimate decomp_residual(RngStream& rng, const BallUnion& a, const BallUnion& b, std::uint64_t n,
                         const WosParams& params, ExecOptions exec = {});

struct BlockingRecord {
  Estimate cap_total;
  Estimate s_sum;
  Estimate xi_sum;
  Estimate upsilon_sum;
  Estimate residual;
  double r = 0.0;
  /// False when the sausage leaves B(0, r); the estimates are then unset.
  bool contained = true;
};

/// sqrt(t) log t, the containment radius used by blocking_decomposition.
double blocking_radius(double t);

/// Splits [0, t] into 2^levels dyadic blocks of the skeleton and estimates
/// cap_total, S = sum of block capacities, Xi = sum of chi_r over sibling
/// pairs at every level, Upsilon = same with eps_r, and the residual
/// cap_total - (S - Xi - Upsilon). Sausages are built with radius 1.
/// Requires 2^levels <= skeleton.size() / 4.
BlockingRecord blocking_decomposition(RngStream& rng, const PathSkeleton& skeleton, int levels,
                                      std::uint64_t n, const WosParams& params, ExecOptions exec = {});

}  // namespace sausage
