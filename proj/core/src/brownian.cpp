// SPDX-License-Identifier: Apache-2.0
#include "sausage/brownian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <unordered_set>

#include "sausage/errors.hpp"
#include "sausage/kernels.hpp"

namespace sausage {

std::vector<TimedPoint> gauss_step_path(RngStream& rng, const Point4& start, double t, double h) {
  if (!(h > 0.0)) throw ConfigError({"gauss_step_path: step h must be positive"});
  if (!(t >= h)) throw ConfigError({"gauss_step_path: step h must not exceed the horizon t"});
  const auto steps = static_cast<std::size_t>(std::ceil(t / h - 1e-12));
  const double sh = std::sqrt(h);
  std::vector<TimedPoint> path;
  path.reserve(steps + 1);
  path.push_back({0.0, start});
  Point4 x = start;
  for (std::size_t k = 1; k <= steps; ++k) {
    x += rng.normal4() * sh;
    path.push_back({static_cast<double>(k) * h, x});
  }
  return path;
}

double sample_exit_time_unit_ball(RngStream& rng, double h) {
  const double sh = std::sqrt(h);
  Point4 x{};
  double t = 0.0;
  double a = 1.0;  // distance of x to the sphere
  for (;;) {
    x += rng.normal4() * sh;
    const double r = norm(x);
    if (r >= 1.0) {
      const double b = r - 1.0;
      return t + h * a / (a + b);
    }
    const double b = 1.0 - r;
    const double exponent = 2.0 * a * b / h;
    if (exponent < 40.0 && rng.uniform() < std::exp(-exponent)) {
      return t + h * a / (a + b);
    }
    a = b;
    t += h;
  }
}

ExitTimeLaw::ExitTimeLaw(std::size_t samples, std::uint64_t seed, double h_exit) {
  if (samples < 2) throw PreconditionError("ExitTimeLaw: need at least two samples");
  RngStream rng(seed, 0x0e817e1aull);
  sorted_.resize(samples);
  for (auto& s : sorted_) s = sample_exit_time_unit_ball(rng, h_exit);
  std::sort(sorted_.begin(), sorted_.end());
  // Mean of the piecewise-linear quantile function used by sample().
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < samples; ++i) acc += 0.5 * (sorted_[i] + sorted_[i + 1]);
  mean_ = acc / static_cast<double>(samples - 1);
}

const ExitTimeLaw& ExitTimeLaw::standard() {
  static const ExitTimeLaw law(std::size_t{1} << 17);
  return law;
}

double ExitTimeLaw::sample(RngStream& rng) const {
  const double pos = rng.uniform() * static_cast<double>(sorted_.size() - 1);
  const auto i = static_cast<std::size_t>(pos);
  const double frac = pos - static_cast<double>(i);
  return sorted_[i] + frac * (sorted_[i + 1] - sorted_[i]);
}

double PathSkeleton::occupation(std::size_t i) const {
  const double end = i + 1 < times.size() ? std::min(times[i + 1], horizon) : horizon;
  return std::max(0.0, end - std::min(times[i], horizon));
}

PathSkeleton PathSkeleton::slice(double begin, double end) const {
  PathSkeleton out;
  out.delta = delta;
  out.horizon = std::min(end, horizon);
  out.next_exit = next_exit;
  const bool closed = end >= horizon;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] >= begin && (times[i] < end || (closed && times[i] <= end))) {
      out.points.push_back(points[i]);
      out.times.push_back(times[i]);
    }
  }
  return out;
}

PathSkeleton sample_skeleton(RngStream& rng, const Point4& start, double t, double delta,
                             const ExitTimeLaw& law) {
  if (!(delta > 0.0)) throw PreconditionError("sample_skeleton: delta must be positive");
  if (!(t > 0.0)) throw PreconditionError("sample_skeleton: horizon must be positive");
  PathSkeleton s;
  s.delta = delta;
  s.horizon = t;
  const double expected = 4.0 * t / (delta * delta);
  if (expected < 5e7) s.points.reserve(static_cast<std::size_t>(expected * 1.05) + 16);
  if (expected < 5e7) s.times.reserve(static_cast<std::size_t>(expected * 1.05) + 16);
  s.points.push_back(start);
  s.times.push_back(0.0);
  const double d2 = delta * delta;
  double now = 0.0;
  Point4 z = start;
  for (;;) {
    const double next = now + d2 * law.sample(rng);
    z = sphere_sample(rng, z, delta);
    if (next > t) {
      s.next_exit = next;
      break;
    }
    s.points.push_back(z);
    s.times.push_back(next);
    now = next;
  }
  return s;
}

PathSkeleton skeleton_from_path(std::span<const TimedPoint> path, double delta) {
  if (!(delta > 0.0)) throw PreconditionError("skeleton_from_path: delta must be positive");
  if (path.empty()) throw PreconditionError("skeleton_from_path: empty path");
  PathSkeleton s;
  s.delta = delta;
  s.horizon = path.back().time;
  s.next_exit = std::numeric_limits<double>::infinity();
  Point4 z = path.front().pos;
  s.points.push_back(z);
  s.times.push_back(path.front().time);
  const double d2 = delta * delta;
  for (std::size_t k = 1; k < path.size(); ++k) {
    Point4 a = path[k - 1].pos;
    double ta = path[k - 1].time;
    const Point4 b = path[k].pos;
    const double tb = path[k].time;
    while (dist2(b, z) >= d2) {
      // Solve |a + u (b - a) - z| = delta for u in (0, 1].
      const Point4 dir = b - a;
      const Point4 off = a - z;
      const double qa = norm2(dir);
      const double qb = 2.0 * dot(off, dir);
      const double qc = norm2(off) - d2;
      const double disc = std::max(0.0, qb * qb - 4.0 * qa * qc);
      double u = qa > 0.0 ? (-qb + std::sqrt(disc)) / (2.0 * qa) : 1.0;
      u = std::clamp(u, 0.0, 1.0);
      const Point4 hit = a + dir * u;
      const double th = ta + u * (tb - ta);
      const Point4 radial = hit - z;
      const double rn = norm(radial);
      z = rn > 0.0 ? z + radial * (delta / rn) : hit;
      s.points.push_back(z);
      s.times.push_back(th);
      a = hit;
      ta = th;
    }
  }
  return s;
}

BallUnion build_sausage(const PathSkeleton& skeleton, double r) {
  if (skeleton.empty()) throw PreconditionError("build_sausage: empty skeleton");
  return BallUnion(skeleton.points, r);
}

double ShellRecord::d_sum() const {
  double s = 0.0;
  for (int i = 0; i <= n_t && i < static_cast<int>(y.size()); ++i) s += y[static_cast<std::size_t>(i)];
  return s;
}

namespace {

// Runs the scale-similar dyadic scheme. Stops once `stop(rec)` is true,
// checked after each crossing.
template <class Stop>
ShellRecord run_shells(RngStream& rng, double h, Stop stop) {
  if (!(h > 0.0) || h > 0.01) throw PreconditionError("dyadic shells: need 0 < h <= 0.01");
  ShellRecord rec;
  Point4 x{};
  double s = 0.0;
  int phase = 0;  // next boundary radius is 2^phase
  double step = h / 4.0;
  double boundary = 1.0;
  for (;;) {
    const double r_before = norm(x);
    if (phase >= 1) {
      double g = r_before > 0.0 ? 1.0 / (kTwoPiSq * r_before * r_before) : kGreenClip;
      if (g > kGreenClip) {
        g = kGreenClip;
        ++rec.clip_count;
      }
      rec.y[static_cast<std::size_t>(phase - 1)] += step * g;
    }
    x += rng.normal4() * std::sqrt(step);
    s += step;
    const double r_after = norm(x);
    bool crossed = false;
    while (r_after > boundary) {
      const double frac = std::clamp((boundary - r_before) / (r_after - r_before), 0.0, 1.0);
      rec.tau.push_back(s - step + frac * step);
      rec.y.push_back(0.0);
      ++phase;
      boundary *= 2.0;
      crossed = true;
    }
    if (crossed) {
      if (stop(rec)) {
        rec.y.pop_back();  // the shell just entered is incomplete
        return rec;
      }
      step = h * std::pow(4.0, phase - 1);
    }
  }
}

}  // namespace

ShellRecord dyadic_shell_record(RngStream& rng, double t, double h) {
  if (!(t > 0.0)) throw PreconditionError("dyadic_shell_record: horizon must be positive");
  ShellRecord rec = run_shells(rng, h, [t](const ShellRecord& r) { return r.tau.back() > t; });
  int n = -1;
  for (std::size_t i = 0; i < rec.tau.size(); ++i) {
    if (rec.tau[i] <= t) n = static_cast<int>(i);
  }
  rec.n_t = n;
  return rec;
}

ShellRecord shell_functionals(RngStream& rng, int count, double h) {
  if (count < 1) throw PreconditionError("shell_functionals: count must be positive");
  ShellRecord rec = run_shells(rng, h, [count](const ShellRecord& r) {
    return static_cast<int>(r.tau.size()) > count;
  });
  rec.n_t = count - 1;
  return rec;
}

namespace {

struct CellKey {
  std::array<std::int64_t, 4> c;
  bool operator==(const CellKey&) const = default;
  bool operator<(const CellKey& o) const { return c < o.c; }
};

struct CellHash {
  std::size_t operator()(const CellKey& k) const noexcept {
    std::uint64_t h = 0x9E3779B97F4A7C15ull;
    for (auto v : k.c) h = splitmix64(h ^ static_cast<std::uint64_t>(v));
    return static_cast<std::size_t>(h);
  }
};

}  // namespace

Estimate volume_estimate(RngStream& rng, const BallUnion& u, std::uint64_t n_probe) {
  const std::uint64_t seed = rng.seed();
  if (u.empty() || n_probe == 0) return Estimate{0.0, 0.0, std::max<std::uint64_t>(n_probe, 1), seed};
  const double cell = u.radius();
  std::unordered_set<CellKey, CellHash> occupied;
  occupied.reserve(u.size() / 8 + 16);
  for (const auto& c : u.centers()) {
    CellKey k;
    for (std::size_t i = 0; i < 4; ++i) k.c[i] = static_cast<std::int64_t>(std::floor(c[i] / cell));
    occupied.insert(k);
  }
  std::unordered_set<CellKey, CellHash> cover;
  cover.reserve(occupied.size() * 16);
  for (const auto& k : occupied) {
    for (int m = 0; m < 81; ++m) {
      CellKey n = k;
      int code = m;
      for (std::size_t i = 0; i < 4; ++i) {
        n.c[i] += code % 3 - 1;
        code /= 3;
      }
      cover.insert(n);
    }
  }
  std::vector<CellKey> cells(cover.begin(), cover.end());
  std::sort(cells.begin(), cells.end());
  const double cover_volume = static_cast<double>(cells.size()) * std::pow(cell, 4);
  std::uint64_t inside = 0;
  for (std::uint64_t k = 0; k < n_probe; ++k) {
    const auto idx = static_cast<std::size_t>(rng.uniform() * static_cast<double>(cells.size()));
    const CellKey& ck = cells[std::min(idx, cells.size() - 1)];
    Point4 p;
    for (std::size_t i = 0; i < 4; ++i) p[i] = (static_cast<double>(ck.c[i]) + rng.uniform()) * cell;
    if (u.contains(p)) ++inside;
  }
  const double n = static_cast<double>(n_probe);
  const double frac = static_cast<double>(inside) / n;
  const double se = n > 1 ? std::sqrt(frac * (1.0 - frac) / (n - 1.0)) : 0.0;
  return Estimate{frac * cover_volume, se * cover_volume, n_probe, seed};
}

Estimate sausage_volume_estimate(RngStream& rng, const PathSkeleton& skeleton, double r,
                                 std::uint64_t n_probe) {
  if (n_probe < 1000) throw PreconditionError("sausage_volume_estimate: need n_probe >= 1000");
  return volume_estimate(rng, build_sausage(skeleton, r), n_probe);
}

}  // namespace sausage
