// SPDX-License-Identifier: Apache-2.0
#include "sausage/functionals.hpp"

#include <algorithm>
#include <cmath>

#include "sausage/ball_union.hpp"
#include "sausage/errors.hpp"
#include "sausage/estimate.hpp"
#include "sausage/kernels.hpp"
#include "sausage/parallel.hpp"
#include "sausage/stats.hpp"

namespace sausage {
namespace {

// The second path of pair_occupation switches to sphere exits once it is
// this far outside the 1-neighborhood of the first path.
constexpr double kPairMargin = 1.0;

}  // namespace

double default_d_step(double t) { return std::min(1e-2, t / 1e4); }

DFunctionals d_functionals(RngStream& rng, double t, double h, std::span<const Point4> xs, StepRule rule) {
  DFunctionals out;
  out.dx.assign(xs.size(), 0.0);
  if (t == 0.0) return out;
  if (!(h > 0.0) || !(t >= h)) throw PreconditionError("d_functionals: need 0 < h <= t");

  Point4 beta{};
  double s = 0.0;
  std::uint64_t k = 0;
  while (s < t) {
    double step = h;
    const double rho2 = norm2(beta);
    if (rule == StepRule::Adaptive) {
      double near2 = rho2;
      for (const Point4& x : xs) near2 = std::min(near2, dist2(beta, x));
      step = h * std::max(1.0, near2);
    }
    step = std::min(step, t - s);
    const double rho = std::sqrt(rho2);
    out.d0 += step * gstar(rho);
    for (std::size_t j = 0; j < xs.size(); ++j) out.dx[j] += step * gstar(dist(beta, xs[j]));
    out.zeta += step / std::max(rho2 * rho, 1.0);
    beta += std::sqrt(step) * rng.normal4();
    ++k;
    // Fixed steps land on the grid k h exactly.
    s = rule == StepRule::Fixed ? std::min(t, static_cast<double>(k) * h) : s + step;
  }
  out.steps = k;
  return out;
}

FunctionalSample d0_functional(RngStream& rng, const Point4& x, double t, double h, StepRule rule) {
  FunctionalSample f;
  f.t = t;
  f.step = h;
  f.seed = rng.seed();
  if (t == 0.0) return f;
  const Point4 xs[1] = {x};
  f.value = d_functionals(rng, t, h, xs, rule).dx[0];
  return f;
}

double d_along_path(std::span<const TimedPoint> path, const Point4& x) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    sum += (path[i + 1].time - path[i].time) * gstar(dist(path[i].pos, x));
  }
  return sum;
}

FunctionalSample dx_delta_functional(const PathSkeleton& skeleton, const Point4& x) {
  if (skeleton.empty()) throw PreconditionError("dx_delta_functional: empty skeleton");
  FunctionalSample f;
  f.t = skeleton.horizon;
  f.step = skeleton.delta;
  for (std::size_t i = 0; i < skeleton.size(); ++i) {
    f.value += skeleton.occupation(i) * gstar(dist(skeleton.points[i], x));
  }
  return f;
}

FunctionalSample pair_occupation(RngStream& rng, const Point4& start1, const Point4& start2, double t1,
                                 double t2, double h, const ExitTimeLaw& law) {
  FunctionalSample f;
  f.t = t1;
  f.step = h;
  f.seed = rng.seed();
  if (t1 == 0.0 || t2 == 0.0) return f;
  if (!(h > 0.0) || h > 1.0) throw PreconditionError("pair_occupation: need 0 < h <= 1");
  if (t1 < 0.0 || t2 < 0.0) throw PreconditionError("pair_occupation: negative horizon");

  // Left Riemann nodes of the first path: u = 0, h, ..., (K-1) h.
  const auto k1 = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(t1 / h)));
  const double h1 = t1 / static_cast<double>(k1);
  std::vector<Point4> nodes;
  nodes.reserve(k1);
  Point4 b = start1;
  const double sd1 = std::sqrt(h1);
  for (std::uint64_t k = 0; k < k1; ++k) {
    nodes.push_back(b);
    b += sd1 * rng.normal4();
  }
  const BallUnion first(std::move(nodes), 1.0);

  Point4 x = start2;
  double s = 0.0;
  double weighted = 0.0;
  while (s < t2) {
    const double d = first.dist(x);
    if (d > kPairMargin) {
      s += d * d * law.sample(rng);
      x = sphere_sample(rng, x, d);
      continue;
    }
    const double step = std::min(h, t2 - s);
    weighted += step * static_cast<double>(first.count_within(x, 1.0));
    x += std::sqrt(step) * rng.normal4();
    s += step;
  }
  f.value = weighted * h1;
  return f;
}

FunctionalSample r_pair_functional(RngStream& rng, const Point4& z, double t, double t_tilde, double h) {
  return pair_occupation(rng, Point4{}, z, t, t_tilde, h);
}

Concentration summarize_concentration(std::vector<double> samples, std::uint64_t seed) {
  if (samples.size() < 2) throw PreconditionError("summarize_concentration: need two samples");
  Concentration c;
  c.samples = std::move(samples);
  const std::size_t n = c.samples.size();
  const Estimate e = estimate_of(c.samples, seed);
  c.mean = e.mean;
  c.std_error = e.std_error;

  std::vector<double> ratio(n);
  std::uint64_t inside = 0;
  double m2 = 0.0, m3 = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    ratio[k] = c.samples[k] / c.mean;
    if (std::abs(ratio[k] - 1.0) <= 0.25) ++inside;
    const double dev = c.samples[k] - c.mean;
    m2 += dev * dev;
    m3 += dev * dev * dev;
  }
  c.within_25 = static_cast<double>(inside) / static_cast<double>(n);
  m2 /= static_cast<double>(n);
  m3 /= static_cast<double>(n);
  c.skewness = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
  std::sort(ratio.begin(), ratio.end());
  for (double q : {0.05, 0.25, 0.5, 0.75, 0.95}) c.quantiles.push_back(quantile_sorted(ratio, q));
  return c;
}

Concentration d0_concentration(RngStream& rng, double t, std::uint64_t n, double h, StepRule rule,
                               unsigned workers) {
  if (n < 1000) throw PreconditionError("d0_concentration: need n >= 1000");
  const RngStream base = rng.derive(rng.next_u64());
  std::vector<double> samples(n, 0.0);
  parallel_for(n, workers, [&](std::size_t k) {
    RngStream local = base.derive(k);
    samples[k] = d_functionals(local, t, h, {}, rule).d0;
  });
  return summarize_concentration(std::move(samples), rng.seed());
}

}  // namespace sausage
