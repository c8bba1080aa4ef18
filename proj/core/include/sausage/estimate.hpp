// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>

namespace sausage {

/// A Monte Carlo result. std_error is the sample standard deviation over
/// sqrt(n).
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
  std::uint64_t seed = 0;

  /// |mean - value| <= k * std_error, with a relative floor of 1e-12 so
  /// zero-variance estimates compare sanely.
  bool within(double value, double k) const;
};

/// Welford running mean/variance. Merging is order-sensitive in the last
/// bits, so callers merge partial accumulators in a fixed order.
class MeanAccumulator {
 public:
  void add(double x);
  void merge(const MeanAccumulator& other);

  std::uint64_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance (0 for fewer than two samples).
  double variance() const noexcept;
  double std_error() const noexcept;

  Estimate estimate(std::uint64_t seed, double scale = 1.0) const;

 private:
  std::uint64_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

Estimate estimate_of(std::span<const double> samples, std::uint64_t seed);

/// a + b with independent errors added in quadrature.
Estimate operator+(const Estimate& a, const Estimate& b);
Estimate operator-(const Estimate& a, const Estimate& b);
Estimate operator*(double s, const Estimate& a);

}  // namespace sausage
