// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sausage/brownian.hpp"
#include "sausage/point4.hpp"
#include "sausage/rng.hpp"

namespace sausage {

struct FunctionalSample {
  double value = 0.0;
  double t = 0.0;
  double step = 0.0;
  std::uint64_t seed = 0;
};

/// Fixed: constant step h. Adaptive: step h * max(1, rho^2) where rho is
/// the distance to the nearest evaluation point; G* is harmonic outside the
/// unit ball, so the coarser steps far away add no first-order bias.
enum class StepRule { Fixed, Adaptive };

/// Step used by the D-functional experiments, min(1e-2, t / 1e4).
double default_d_step(double t);

struct DFunctionals {
  double d0 = 0.0;
  /// D_x for each requested x, same path and discretization.
  std::vector<double> dx;
  /// sum of step / max(|beta|^3, 1).
  double zeta = 0.0;
  std::uint64_t steps = 0;
};

/// Riemann sums of G*(x - beta_s) over [0, t] along one fresh path from 0.
DFunctionals d_functionals(RngStream& rng, double t, double h, std::span<const Point4> xs,
                           StepRule rule = StepRule::Fixed);

/// D_x[0, t] = int_0^t G*(|x - beta_s|) ds. t = 0 gives 0; otherwise
/// requires 0 < h <= t.
FunctionalSample d0_functional(RngStream& rng, const Point4& x, double t, double h,
                               StepRule rule = StepRule::Fixed);

/// Left Riemann sum of G*(|x - beta|) along a stored path.
double d_along_path(std::span<const TimedPoint> path, const Point4& x);

/// D_x^delta = sum_i occupation(i) * G*(|x - Z_i|).
FunctionalSample dx_delta_functional(const PathSkeleton& skeleton, const Point4& x);

/// Pair occupation int_0^{t2} ds int_0^{t1} du 1(|beta2_s - beta1_u| <= 1),
/// beta1 from start1 sampled with step h, beta2 from start2. Away from the
/// first path's 1-neighborhood the second path moves by exact sphere exits
/// (no pairs can be counted inside such a sphere), so long horizons t2 are
/// cheap; near it the path takes Gaussian steps of size h.
FunctionalSample pair_occupation(RngStream& rng, const Point4& start1, const Point4& start2, double t1,
                                 double t2, double h, const ExitTimeLaw& law = ExitTimeLaw::standard());

/// R[0, t] for paths from 0 (horizon t) and z (horizon t_tilde). Requires
/// 0 < h <= 1; t = 0 gives 0.
FunctionalSample r_pair_functional(RngStream& rng, const Point4& z, double t, double t_tilde, double h);

/// Summary of D_0[0, t] / mean over n paths.
struct Concentration {
  double mean = 0.0;
  double std_error = 0.0;
  /// Fraction of samples with |D - mean| <= 0.25 * mean.
  double within_25 = 0.0;
  /// Quantiles of D / mean at 5%, 25%, 50%, 75%, 95%.
  std::vector<double> quantiles;
  double skewness = 0.0;
  std::vector<double> samples;
};

/// Summary statistics of a sample of D values (n >= 2).
Concentration summarize_concentration(std::vector<double> samples, std::uint64_t seed);

/// Requires n >= 1000. Sample k uses an independent child stream, so the
/// result does not depend on `workers`.
Concentration d0_concentration(RngStream& rng, double t, std::uint64_t n, double h,
                               StepRule rule = StepRule::Adaptive, unsigned workers = 1);

}  // namespace sausage
