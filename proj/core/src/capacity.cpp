// SPDX-License-Identifier: Apache-2.0
#include "sausage/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "sausage/errors.hpp"
#include "sausage/kernels.hpp"
#include "sausage/parallel.hpp"

namespace sausage {
namespace {

constexpr std::uint64_t kChunk = 2048;

struct Partial {
  MeanAccumulator acc;
  WosStats stats;
};

// Runs n walkers; walker(rng, stats) returns the walker's score.
template <class Walker>
MeanAccumulator run_walkers(RngStream& rng, std::uint64_t n, const ExecOptions& exec, Walker&& walker) {
  // Consume from the caller's stream so successive calls are independent.
  const RngStream base = rng.derive(rng.next_u64());
  const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<Partial> parts(chunks);
  parallel_for(chunks, exec.workers, [&](std::size_t k) {
    RngStream local = base.derive(k);
    const std::uint64_t begin = k * kChunk;
    const std::uint64_t end = std::min(n, begin + kChunk);
    Partial& p = parts[k];
    for (std::uint64_t j = begin; j < end; ++j) p.acc.add(walker(local, p.stats));
  });
  MeanAccumulator total;
  WosStats stats;
  for (const auto& p : parts) {
    total.merge(p.acc);
    stats.merge(p.stats);
  }
  if (exec.stats) exec.stats->merge(stats);
  return total;
}

void record(WosStats& s, const HitOutcome& h) {
  ++s.walkers;
  s.steps += h.steps;
  if (h.truncated) ++s.truncated;
}

void require_n(std::uint64_t n) {
  if (n < 1000) throw PreconditionError("capacity estimators need n >= 1000 walkers");
}

void require_contained(const BallUnion& u, double r) {
  if (!u.empty() && u.bounding_radius() > r) {
    throw PreconditionError("union is not contained in the launch sphere");
  }
}

double ball_radius_of(const BallUnion& a, const BallUnion& b) {
  return a.empty() ? b.radius() : a.radius();
}

struct CrossScore {
  double chi = 0.0;
  double tie = 0.0;
};

CrossScore cross_walker(RngStream& rng, const BallUnion& a, const BallUnion& b, const Ball& sphere,
                        const WosParams& params, WosStats& stats) {
  const Point4 z = sphere_sample(rng, sphere.center, sphere.radius);
  const HitOutcome first = wos_hit(rng, z, a, &b, sphere, params);
  record(stats, first);
  CrossScore s;
  switch (first.kind) {
    case HitKind::Escaped:
      break;
    case HitKind::HitTie:
      s.tie = first.weight;
      break;
    case HitKind::HitA:
    case HitKind::HitB: {
      const BallUnion& other = first.kind == HitKind::HitA ? b : a;
      const HitOutcome second = wos_hit(rng, first.position, other, nullptr, sphere, params);
      record(stats, second);
      if (second.hit()) s.chi = first.weight * second.weight;
      break;
    }
  }
  return s;
}

Estimate cross_term(RngStream& rng, const BallUnion& a, const BallUnion& b, double r, std::uint64_t n,
                    const WosParams& params, const ExecOptions& exec, bool want_chi) {
  require_n(n);
  if (!(r > 0.0)) throw PreconditionError("launch radius must be positive");
  require_contained(a, r);
  require_contained(b, r);
  if (a.empty() || b.empty()) return Estimate{0.0, 0.0, n, rng.seed()};
  params.validate(ball_radius_of(a, b));
  const Ball sphere(Point4{}, r);
  const MeanAccumulator acc = run_walkers(rng, n, exec, [&](RngStream& local, WosStats& stats) {
    const CrossScore s = cross_walker(local, a, b, sphere, params, stats);
    return want_chi ? s.chi : s.tie;
  });
  return acc.estimate(rng.seed(), kTwoPiSq * r * r);
}

}  // namespace

BallUnion merge_unions(const BallUnion& a, const BallUnion& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.radius() != b.radius()) throw PreconditionError("merge_unions: radii differ");
  std::vector<Point4> centers(a.centers().begin(), a.centers().end());
  centers.insert(centers.end(), b.centers().begin(), b.centers().end());
  return BallUnion(std::move(centers), a.radius());
}

Estimate cap_estimate(RngStream& rng, const BallUnion& a, std::uint64_t n, const WosParams& params,
                      ExecOptions exec) {
  return cap_estimate_from(rng, a, 2.0 * a.bounding_radius(), n, params, exec);
}

Estimate cap_estimate_from(RngStream& rng, const BallUnion& a, double sphere_radius, std::uint64_t n,
                           const WosParams& params, ExecOptions exec) {
  require_n(n);
  if (a.empty()) return Estimate{0.0, 0.0, n, rng.seed()};
  params.validate(a.radius());
  require_contained(a, sphere_radius);
  const Ball sphere(Point4{}, sphere_radius);
  const MeanAccumulator acc = run_walkers(rng, n, exec, [&](RngStream& local, WosStats& stats) {
    const Point4 z = sphere_sample(local, sphere.center, sphere.radius);
    const HitOutcome h = wos_hit(local, z, a, nullptr, sphere, params);
    record(stats, h);
    return h.hit() ? h.weight : 0.0;
  });
  return acc.estimate(rng.seed(), kTwoPiSq * sphere_radius * sphere_radius);
}

Estimate chi_estimate(RngStream& rng, const BallUnion& a, const BallUnion& b, double r, std::uint64_t n,
                      const WosParams& params, ExecOptions exec) {
  return cross_term(rng, a, b, r, n, params, exec, true);
}

Estimate eps_estimate(RngStream& rng, const BallUnion& a, const BallUnion& b, double r, std::uint64_t n,
                      const WosParams& params, ExecOptions exec) {
  return cross_term(rng, a, b, r, n, params, exec, false);
}

DecompTerms decomp_terms(RngStream& rng, const BallUnion& a, const BallUnion& b, std::uint64_t n,
                         const WosParams& params, ExecOptions exec) {
  require_n(n);
  DecompTerms d;
  const Estimate zero{0.0, 0.0, n, rng.seed()};
  if (a.empty() || b.empty()) {
    d.cap_ab = d.cap_a = d.cap_b = d.chi = d.eps = d.residual = zero;
    return d;
  }
  const BallUnion ab = merge_unions(a, b);
  d.r = 2.0 * ab.bounding_radius();
  RngStream s_ab = rng.derive(1), s_a = rng.derive(2), s_b = rng.derive(3), s_chi = rng.derive(4),
            s_eps = rng.derive(5);
  rng.next_u64();
  d.cap_ab = cap_estimate(s_ab, ab, n, params, exec);
  d.cap_a = cap_estimate(s_a, a, n, params, exec);
  d.cap_b = cap_estimate(s_b, b, n, params, exec);
  d.chi = chi_estimate(s_chi, a, b, d.r, n, params, exec);
  d.eps = eps_estimate(s_eps, a, b, d.r, n, params, exec);
  d.residual = d.cap_ab - d.cap_a - d.cap_b + d.chi + d.eps;
  d.residual.n = n;
  d.residual.seed = rng.seed();
  return d;
}

Estimate decomp_residual(RngStream& rng, const BallUnion& a, const BallUnion& b, std::uint64_t n,
                         const WosParams& params, ExecOptions exec) {
  return decomp_terms(rng, a, b, n, params, exec).residual;
}

double blocking_radius(double t) {
  if (!(t > 1.0)) throw PreconditionError("blocking_radius: t must exceed 1");
  return std::sqrt(t) * std::log(t);
}

BlockingRecord blocking_decomposition(RngStream& rng, const PathSkeleton& skeleton, int levels,
                                      std::uint64_t n, const WosParams& params, ExecOptions exec) {
  if (levels < 0 || levels > 30) throw PreconditionError("blocking_decomposition: bad level count");
  if ((std::size_t{1} << levels) > skeleton.size() / 4) {
    throw PreconditionError("blocking_decomposition: too many levels for the skeleton");
  }
  require_n(n);
  const double t = skeleton.horizon;
  BlockingRecord rec;
  rec.r = blocking_radius(t);

  const BallUnion whole = build_sausage(skeleton, 1.0);
  if (whole.bounding_radius() > rec.r) {
    rec.contained = false;
    return rec;
  }
  RngStream total_rng = rng.derive(0);
  rec.cap_total = cap_estimate(total_rng, whole, n, params, exec);
  rec.xi_sum = Estimate{0.0, 0.0, n, rng.seed()};
  rec.upsilon_sum = rec.xi_sum;

  if (levels == 0) {
    rec.s_sum = rec.cap_total;
    rec.residual = Estimate{0.0, 0.0, n, rng.seed()};
    return rec;
  }

  auto block = [&](int level, std::size_t k) {
    const double len = t / static_cast<double>(std::size_t{1} << level);
    const PathSkeleton part = skeleton.slice(static_cast<double>(k) * len, static_cast<double>(k + 1) * len);
    return part.empty() ? BallUnion{} : build_sausage(part, 1.0);
  };

  std::uint64_t stream = 1;
  for (int level = 1; level <= levels; ++level) {
    const std::size_t pairs = std::size_t{1} << (level - 1);
    for (std::size_t i = 0; i < pairs; ++i) {
      const BallUnion a = block(level, 2 * i);
      const BallUnion b = block(level, 2 * i + 1);
      RngStream s_chi = rng.derive(stream++);
      RngStream s_eps = rng.derive(stream++);
      rec.xi_sum = rec.xi_sum + chi_estimate(s_chi, a, b, rec.r, n, params, exec);
      rec.upsilon_sum = rec.upsilon_sum + eps_estimate(s_eps, a, b, rec.r, n, params, exec);
    }
  }
  rec.s_sum = Estimate{0.0, 0.0, n, rng.seed()};
  const std::size_t blocks = std::size_t{1} << levels;
  for (std::size_t k = 0; k < blocks; ++k) {
    RngStream s = rng.derive(stream++);
    rec.s_sum = rec.s_sum + cap_estimate(s, block(levels, k), n, params, exec);
  }
  rng.next_u64();
  rec.residual = rec.cap_total - (rec.s_sum - rec.xi_sum - rec.upsilon_sum);
  for (Estimate* e : {&rec.cap_total, &rec.s_sum, &rec.xi_sum, &rec.upsilon_sum, &rec.residual}) {
    e->n = n;
    e->seed = rng.seed();
  }
  return rec;
}

}  // namespace sausage
