// SPDX-License-Identifier: Apache-2.0
#include "sausage/estimate.hpp"

#include <algorithm>
#include <cmath>

namespace sausage {

bool Estimate::within(double value, double k) const {
  const double tol = k * std_error + 1e-12 * std::max(std::abs(value), std::abs(mean));
  return std::abs(mean - value) <= tol;
}

void MeanAccumulator::add(double x) {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void MeanAccumulator::merge(const MeanAccumulator& o) {
  if (o.n_ == 0) return;
  if (n_ == 0) {
    *this = o;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(o.n_);
  const double delta = o.mean_ - mean_;
  const double n = na + nb;
  mean_ += delta * nb / n;
  m2_ += o.m2_ + delta * delta * na * nb / n;
  n_ += o.n_;
}

double MeanAccumulator::variance() const noexcept {
  return n_ > 1 ? m2_ / static_cast<double>(n_ - 1) : 0.0;
}

double MeanAccumulator::std_error() const noexcept {
  return n_ > 0 ? std::sqrt(variance() / static_cast<double>(n_)) : 0.0;
}

Estimate MeanAccumulator::estimate(std::uint64_t seed, double scale) const {
  return Estimate{scale * mean_, std::abs(scale) * std_error(), n_, seed};
}

Estimate estimate_of(std::span<const double> samples, std::uint64_t seed) {
  MeanAccumulator acc;
  for (double x : samples) acc.add(x);
  return acc.estimate(seed);
}

Estimate operator+(const Estimate& a, const Estimate& b) {
  return {a.mean + b.mean, std::hypot(a.std_error, b.std_error), std::min(a.n, b.n), a.seed};
}

Estimate operator-(const Estimate& a, const Estimate& b) {
  return {a.mean - b.mean, std::hypot(a.std_error, b.std_error), std::min(a.n, b.n), a.seed};
}

Estimate operator*(double s, const Estimate& a) {
  return {s * a.mean, std::abs(s) * a.std_error, a.n, a.seed};
}

}  // namespace sausage
