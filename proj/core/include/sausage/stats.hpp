// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace sausage {

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Two-sample Kolmogorov-Smirnov test with the asymptotic Kolmogorov
/// p-value (Stephens' effective-size correction).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Survival function of the Kolmogorov distribution, P(K > lambda).
double kolmogorov_sf(double lambda);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_se = 0.0;
};

/// Ordinary least squares y = intercept + slope * x. Needs two distinct x.
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

/// Weighted least squares with weights 1/sigma^2; slope_se from the
/// weighted normal equations.
LinearFit weighted_linear_fit(std::span<const double> x, std::span<const double> y,
                              std::span<const double> sigma);

/// Linear-interpolated quantile of an ascending sample, q in [0, 1].
double quantile_sorted(std::span<const double> sorted, double q);

}  // namespace sausage
