// SPDX-License-Identifier: Apache-2.0
#include "sausage/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "sausage/brownian.hpp"
#include "sausage/capacity.hpp"
#include "sausage/errors.hpp"
#include "sausage/functionals.hpp"
#include "sausage/kernels.hpp"
#include "sausage/parallel.hpp"
#include "sausage/rng.hpp"
#include "sausage/stats.hpp"

namespace sausage {
namespace {

using Clock = std::chrono::steady_clock;
using nlohmann::json;

class Timer {
 public:
  explicit Timer(bool on) : on_(on), start_(Clock::now()) {}
  double seconds() const {
    return on_ ? std::chrono::duration<double>(Clock::now() - start_).count() : 0.0;
  }

 private:
  bool on_;
  Clock::time_point start_;
};

RngStream unit_stream(const ExperimentConfig& c, std::string_view tag, double t, std::uint64_t index) {
  return RngStream(c.seed, hash_stream_id(tag, t, index));
}

class RunBuilder {
 public:
  explicit RunBuilder(const ExperimentConfig& c) : c_(c) {}

  void add(std::string id, double t, const Estimate& e, double wall, double escape_rate = 0.0,
           std::uint64_t clips = 0) {
    ResultRow r;
    r.experiment = std::move(id);
    r.kind = std::string(kind_name(c_.kind));
    r.t = t;
    r.delta = c_.delta;
    r.r_sausage = c_.r_sausage;
    r.n_paths = c_.n_paths;
    r.n_walkers = c_.n_walkers;
    r.seed = c_.seed;
    r.mean = e.mean;
    r.std_error = e.std_error;
    r.n = std::max<std::uint64_t>(e.n, 1);
    r.wall_time_s = wall;
    r.diag_escape_rate = escape_rate;
    r.diag_clip_count = clips;
    rows_.push_back(std::move(r));
  }

  void note(std::string key, json value) { notes_[std::move(key)] = std::move(value); }

  RunReport finish() {
    RunReport report;
    for (auto& r : rows_) {
      if (r.diag_escape_rate > kMaxTruncationRate) {
        r.experiment += kInvalidTag;
        report.valid = false;
      }
    }
    json meta;
    json cfg = json::object();
    for (const auto& [k, v] : describe(c_)) cfg[k] = v;
    json defaults = json::object();
    for (const auto& [k, v] : describe(default_config(c_.kind))) defaults[k] = v;
    meta["config"] = cfg;
    meta["defaults"] = defaults;
    meta["valid"] = report.valid;
    meta["max_truncation_rate"] = kMaxTruncationRate;
    meta["csv_header"] = std::string(kCsvHeader);
    meta["notes"] = notes_;
    report.metadata_json = meta.dump(2) + "\n";
    report.rows = std::move(rows_);
    return report;
  }

 private:
  const ExperimentConfig& c_;
  std::vector<ResultRow> rows_;
  json notes_ = json::object();
};

std::string num(double v) { return fmt::format("{}", v); }

void require_kind(const ExperimentConfig& c, ExperimentKind k) {
  if (c.kind != k) throw PreconditionError(fmt::format("expected a '{}' config", kind_name(k)));
  c.validate();
}

// Sample mean and its error for a list of per-path values.
Estimate across(const std::vector<double>& v, std::uint64_t seed) { return estimate_of(v, seed); }

// Standard error of a sample variance / coefficient of variation under a
// normal approximation.
double spread_se(double value, std::size_t n) {
  return n > 1 ? value * std::sqrt(1.0 / (2.0 * static_cast<double>(n - 1))) : 0.0;
}

RunReport run_cap(const ExperimentConfig& c) {
  require_kind(c, ExperimentKind::Cap);
  RunBuilder out(c);
  for (std::size_t j = 0; j < c.radii.size(); ++j) {
    const double rho = c.radii[j];
    Timer timer(c.record_timing);
    const BallUnion ball({Point4{}}, rho);
    WosStats stats;
    RngStream rng = unit_stream(c, "cap", rho, 0);
    const Estimate cap = cap_estimate(rng, ball, c.n_walkers, c.wos, {c.workers, &stats});
    out.add(fmt::format("cap.rho={}", num(rho)), 0.0, cap, timer.seconds(), stats.truncation_rate());

    // Hit frequency from |z| = 2 rho, exact value 1/4.
    Timer hit_timer(c.record_timing);
    RngStream hit_rng = unit_stream(c, "cap.hit", rho, 0);
    const RngStream base = hit_rng.derive(0);
    const std::uint64_t chunks = (c.n_walkers + 2047) / 2048;
    std::vector<MeanAccumulator> parts(chunks);
    std::vector<WosStats> part_stats(chunks);
    const Ball sphere(Point4{}, 2.0 * rho);
    parallel_for(chunks, c.workers, [&](std::size_t k) {
      RngStream local = base.derive(k);
      const std::uint64_t end = std::min<std::uint64_t>(c.n_walkers, (k + 1) * 2048);
      for (std::uint64_t i = k * 2048; i < end; ++i) {
        const Point4 z = sphere_sample(local, Point4{}, 2.0 * rho);
        const HitOutcome h = wos_hit(local, z, ball, nullptr, sphere, c.wos);
        ++part_stats[k].walkers;
        if (h.truncated) ++part_stats[k].truncated;
        parts[k].add(h.hit() ? h.weight : 0.0);
      }
    });
    MeanAccumulator acc;
    WosStats hit_stats;
    for (std::size_t k = 0; k < chunks; ++k) {
      acc.merge(parts[k]);
      hit_stats.merge(part_stats[k]);
    }
    out.add(fmt::format("cap.hit_prob.rho={}", num(rho)), 0.0, acc.estimate(c.seed), hit_timer.seconds(),
            hit_stats.truncation_rate());
  }
  out.note("cap.reference", "2 pi^2 rho^2; hit_prob reference 1/4");
  return out.finish();
}

RunReport run_decomp(const ExperimentConfig& c) {
  require_kind(c, ExperimentKind::Decomp);
  RunBuilder out(c);
  const auto battery = decomp_battery();
  struct Unit {
    DecompTerms terms;
    WosStats stats;
    Estimate bound;
    double wall = 0.0;
  };
  std::vector<Unit> units(battery.size());
  parallel_for(battery.size(), c.workers, [&](std::size_t j) {
    Timer timer(c.record_timing);
    const UnionPair& p = battery[j];
    RngStream rng = unit_stream(c, "decomp", 0.0, j);
    Unit& u = units[j];
    u.terms = decomp_terms(rng, p.a, p.b, c.n_walkers, c.wos, {1, &u.stats});
    if (p.overlapping) {
      const IntersectionBound ib = intersection_bound(p.a, p.b);
      u.bound = Estimate{ib.lens_capacity, 0.0, c.n_walkers, c.seed};
      if (!ib.shared.empty()) {
        RngStream srng = unit_stream(c, "decomp.shared", 0.0, j);
        const Estimate shared = cap_estimate(srng, ib.shared, c.n_walkers, c.wos, {1, &u.stats});
        if (shared.mean > u.bound.mean) u.bound = shared;
      }
    }
    u.wall = timer.seconds();
  });
  for (std::size_t j = 0; j < battery.size(); ++j) {
    const Unit& u = units[j];
    const std::string& name = battery[j].name;
    const double rate = u.stats.truncation_rate();
    out.add(fmt::format("decomp.{}.residual", name), 0.0, u.terms.residual, u.wall, rate);
    out.add(fmt::format("decomp.{}.chi", name), 0.0, u.terms.chi, 0.0, rate);
    out.add(fmt::format("decomp.{}.eps", name), 0.0, u.terms.eps, 0.0, rate);
    if (battery[j].overlapping) {
      out.add(fmt::format("decomp.{}.intersection_lb", name), 0.0, u.bound, 0.0, rate);
    }
  }
  out.note("decomp.residual", "Cap(AuB) - Cap(A) - Cap(B) + chi + eps, expected 0");
  out.note("decomp.intersection_lb", "lower bound on Cap(A n B); eps must not exceed it");
  return out.finish();
}

RunReport run_volume(const ExperimentConfig& c) {
  require_kind(c, ExperimentKind::Volume);
  RunBuilder out(c);
  for (double t : c.t_grid) {
    Timer timer(c.record_timing);
    std::vector<double> per_t(c.n_paths);
    parallel_for(c.n_paths, c.workers, [&](std::size_t i) {
      RngStream rng = unit_stream(c, "volume", t, i);
      const PathSkeleton sk = sample_skeleton(rng, Point4{}, t, c.delta);
      per_t[i] = sausage_volume_estimate(rng, sk, c.r_sausage, c.n_walkers).mean / t;
    });
    out.add("volume.per_t", t, across(per_t, c.seed), timer.seconds());
  }
  out.note("volume.reference", "volume/t tends to Cap(B(0,r)) = 2 pi^2 r^2");
  return out.finish();
}

RunReport run_d0(const ExperimentConfig& c) {
  require_kind(c, ExperimentKind::D0Sweep);
  RunBuilder out(c);
  std::vector<double> log_t, means, ses;
  for (double t : c.t_grid) {
    Timer timer(c.record_timing);
    const double h = c.h > 0.0 ? std::min(c.h, t) : default_d_step(t);
    std::vector<double> samples(c.n_paths);
    parallel_for(c.n_paths, c.workers, [&](std::size_t i) {
      RngStream rng = unit_stream(c, "d0", t, i);
      samples[i] = d_functionals(rng, t, h, {}, StepRule::Adaptive).d0;
    });
    double second = 0.0;
    for (double v : samples) second += v * v;
    second /= static_cast<double>(samples.size());
    const Concentration conc = summarize_concentration(std::move(samples), c.seed);
    const double wall = timer.seconds();
    const Estimate mean{conc.mean, conc.std_error, c.n_paths, c.seed};
    out.add("d0.mean", t, mean, wall);
    out.add("d0.ratio_log_t", t, (1.0 / std::log(t)) * mean, 0.0);
    const double n = static_cast<double>(c.n_paths);
    out.add("d0.frac_within_25pct", t,
            Estimate{conc.within_25, std::sqrt(conc.within_25 * (1.0 - conc.within_25) / n), c.n_paths, c.seed},
            0.0);
    out.add("d0.second_moment_ratio", t, Estimate{second / (conc.mean * conc.mean), 0.0, c.n_paths, c.seed}, 0.0);
    log_t.push_back(std::log(t));
    means.push_back(conc.mean);
    ses.push_back(std::max(conc.std_error, 1e-300));
  }
  if (c.t_grid.size() >= 2) {
    const LinearFit fit = linear_fit(log_t, means);
    const LinearFit wfit = weighted_linear_fit(log_t, means, ses);
    out.add("d0.slope", 0.0, Estimate{fit.slope, wfit.slope_se, c.n_paths, c.seed}, 0.0);
    out.add("d0.intercept", 0.0, Estimate{fit.intercept, 0.0, c.n_paths, c.seed}, 0.0);
  }
  out.note("d0.step_rule", "adaptive: h * max(1, |beta|^2), h = min(1e-2, t/1e4) unless set");
  out.note("d0.reference_slope", 0.125);
  return out.finish();
}

RunReport run_blocking(const ExperimentConfig& c) {
  require_kind(c, ExperimentKind::Blocking);
  RunBuilder out(c);
  for (double t : c.t_grid) {
    Timer timer(c.record_timing);
    std::vector<BlockingRecord> recs(c.n_paths);
    std::vector<WosStats> stats(c.n_paths);
    parallel_for(c.n_paths, c.workers, [&](std::size_t i) {
      RngStream rng = unit_stream(c, "blocking", t, i);
      const PathSkeleton sk = sample_skeleton(rng, Point4{}, t, c.delta);
      recs[i] = blocking_decomposition(rng, sk, c.levels, c.n_walkers, c.wos, {1, &stats[i]});
    });
    WosStats all;
    for (const auto& s : stats) all.merge(s);
    std::vector<double> total, s_sum, xi, ups, res;
    std::uint64_t discarded = 0;
    for (const auto& r : recs) {
      if (!r.contained) {
        ++discarded;
        continue;
      }
      total.push_back(r.cap_total.mean);
      s_sum.push_back(r.s_sum.mean);
      xi.push_back(r.xi_sum.mean);
      ups.push_back(r.upsilon_sum.mean);
      res.push_back(r.residual.mean);
    }
    const double wall = timer.seconds();
    const double rate = all.truncation_rate();
    auto summary = [&](const std::vector<double>& v) {
      return v.empty() ? Estimate{0.0, 0.0, 1, c.seed} : across(v, c.seed);
    };
    out.add("blocking.cap_total", t, summary(total), wall, rate);
    out.add("blocking.s_sum", t, summary(s_sum), 0.0, rate);
    out.add("blocking.xi_sum", t, summary(xi), 0.0, rate);
    out.add("blocking.upsilon_sum", t, summary(ups), 0.0, rate);
    out.add("blocking.residual", t, summary(res), 0.0, rate);
    out.add("blocking.discarded_fraction", t,
            Estimate{static_cast<double>(discarded) / static_cast<double>(c.n_paths), 0.0, c.n_paths, c.seed}, 0.0);
  }
  out.note("blocking.radius", "r(t) = sqrt(t) log t; paths leaving B(0, r(t)) are discarded");
  return out.finish();
}

RunReport run_pair(const ExperimentConfig& c) {
  require_kind(c, ExperimentKind::PairFunctional);
  RunBuilder out(c);
  json tails = json::object();
  for (double t : c.t_grid) {
    const double h = c.h > 0.0 ? c.h : std::min(0.05, t / 1e3);
    for (double zn : c.z_norms) {
      Timer timer(c.record_timing);
      const double t_tilde = c.horizon_factor * std::max(t, zn * zn);
      std::vector<double> raw(c.n_paths);
      parallel_for(c.n_paths, c.workers, [&](std::size_t i) {
        RngStream rng = unit_stream(c, fmt::format("pair.z={}", num(zn)), t, i);
        const Point4 z = sphere_sample(rng, Point4{}, zn);
        raw[i] = r_pair_functional(rng, z, t, t_tilde, h).value;
      });
      const Estimate r = across(raw, c.seed);
      const double g = green_radial(zn);
      out.add(fmt::format("pair.z={}.ratio", num(zn)), t, (1.0 / g) * r, timer.seconds());
      out.add(fmt::format("pair.z={}.raw", num(zn)), t, r, 0.0);
      // Occupation density of the second path near the origin after t_tilde
      // is about 1/(4 pi^2 s^2); relative to G(z) the neglected tail is
      // |z|^2 / (2 t_tilde).
      tails[fmt::format("t={},z={}", num(t), num(zn))] = zn * zn / (2.0 * t_tilde);
    }
  }
  out.note("pair.reference", "ratio tends to (pi^2/2) t as |z| grows");
  out.note("pair.relative_tail_bound", tails);
  return out.finish();
}

}  // namespace

RunReport lln_sweep(const ExperimentConfig& c) {
  require_kind(c, ExperimentKind::Lln);
  RunBuilder out(c);
  for (double t : c.t_grid) {
    Timer timer(c.record_timing);
    std::vector<double> caps(c.n_paths);
    std::vector<WosStats> stats(c.n_paths);
    parallel_for(c.n_paths, c.workers, [&](std::size_t i) {
      RngStream rng = unit_stream(c, "lln", t, i);
      const PathSkeleton sk = sample_skeleton(rng, Point4{}, t, c.delta);
      const BallUnion u = build_sausage(sk, c.r_sausage);
      caps[i] = cap_estimate(rng, u, c.n_walkers, c.wos, {1, &stats[i]}).mean;
    });
    WosStats all;
    for (const auto& s : stats) all.merge(s);
    const double rate = all.truncation_rate();
    const Estimate raw = across(caps, c.seed);
    const double scale = std::log(t) / t;
    const double sd = raw.std_error * std::sqrt(static_cast<double>(caps.size()));
    const double var = sd * sd;
    const double rel = raw.mean != 0.0 ? sd / raw.mean : 0.0;
    out.add("lln.scaled_cap", t, scale * raw, timer.seconds(), rate);
    out.add("lln.cap", t, raw, 0.0, rate);
    out.add("lln.cap_variance", t, Estimate{var, 2.0 * spread_se(var, caps.size()), c.n_paths, c.seed},
            0.0, rate);
    out.add("lln.cap_rel_spread", t, Estimate{rel, spread_se(rel, caps.size()), c.n_paths, c.seed}, 0.0, rate);
  }
  out.note("lln.reference", "(log t / t) Cap(W_r[0,t]) tends to 4 pi^2");
  return out.finish();
}

RunReport intersect_sweep(const ExperimentConfig& c) {
  require_kind(c, ExperimentKind::Intersect);
  RunBuilder out(c);
  const std::size_t nz = c.z_multiples.size();
  for (double t : c.t_grid) {
    Timer timer(c.record_timing);
    const double horizon = c.horizon_factor * t;
    // Per path and per |z|: single-hit fraction, double-hit fraction, tail.
    std::vector<std::vector<double>> single(nz, std::vector<double>(c.n_paths));
    std::vector<std::vector<double>> dbl(nz, std::vector<double>(c.n_paths));
    std::vector<double> tail(c.n_paths);
    std::vector<WosStats> stats(c.n_paths);
    parallel_for(c.n_paths, c.workers, [&](std::size_t i) {
      RngStream rng = unit_stream(c, "intersect", t, i);
      const PathSkeleton sk = sample_skeleton(rng, Point4{}, t, c.delta);
      // Two sausages of radius r meet iff the second path comes within 2r
      // of the first.
      const BallUnion u = build_sausage(sk, 2.0 * c.r_sausage);
      double tail_sum = 0.0;
      std::uint64_t misses = 0;
      for (std::size_t m = 0; m < nz; ++m) {
        const double zn = c.z_multiples[m] * std::sqrt(t);
        std::uint64_t hits = 0, both = 0;
        bool prev = false;
        for (std::uint64_t j = 0; j < c.n_walkers; ++j) {
          const Point4 z = sphere_sample(rng, Point4{}, zn);
          bool hit = true;
          if (u.dist(z) > c.wos.eps_hit) {
            const TimedHit th = timed_hit(rng, z, u, horizon, c.wos.eps_hit, c.wos.max_steps);
            ++stats[i].walkers;
            if (th.truncated) ++stats[i].truncated;
            stats[i].steps += th.steps;
            hit = th.hit;
            if (!hit) {
              tail_sum += ball_hit_prob(th.position, u.bounding_radius());
              ++misses;
            }
          }
          if (hit) ++hits;
          if (j % 2 == 1 && hit && prev) ++both;
          prev = hit;
        }
        single[m][i] = static_cast<double>(hits) / static_cast<double>(c.n_walkers);
        const std::uint64_t pairs = c.n_walkers / 2;
        dbl[m][i] = pairs > 0 ? static_cast<double>(both) / static_cast<double>(pairs) : 0.0;
      }
      tail[i] = misses > 0 ? tail_sum / static_cast<double>(misses) : 0.0;
    });
    WosStats all;
    for (const auto& s : stats) all.merge(s);
    const double rate = all.truncation_rate();
    const double wall = timer.seconds();
    const double lt = std::log(t);
    const double llt = std::log(lt);
    for (std::size_t m = 0; m < nz; ++m) {
      const double mult = c.z_multiples[m];
      const double ratio = std::min(1.0, 1.0 / (mult * mult));  // 1 ^ t/|z|^2
      const double norm1 = ratio * llt * llt / lt;
      const double norm2 = ratio * ratio * std::pow(llt, 4) / (lt * lt);
      const Estimate s = across(single[m], c.seed);
      const Estimate d = across(dbl[m], c.seed);
      out.add(fmt::format("intersect.single.z={}", num(mult)), t, s, m == 0 ? wall : 0.0, rate);
      out.add(fmt::format("intersect.single.z={}.normalized", num(mult)), t, (1.0 / norm1) * s, 0.0, rate);
      out.add(fmt::format("intersect.double.z={}", num(mult)), t, d, 0.0, rate);
      out.add(fmt::format("intersect.double.z={}.normalized", num(mult)), t, (1.0 / norm2) * d, 0.0, rate);
    }
    out.add("intersect.tail_bound", t, across(tail, c.seed), 0.0, rate);
  }
  out.note("intersect.z", "z values are multiples of sqrt(t)");
  out.note("intersect.horizon", "second paths run for horizon_factor * t");
  out.note("intersect.tail_bound",
           "mean over missed walkers of the probability of later hitting the bounding ball");
  return out.finish();
}

RunReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  switch (config.kind) {
    case ExperimentKind::Cap:
      return run_cap(config);
    case ExperimentKind::Lln:
      return lln_sweep(config);
    case ExperimentKind::Decomp:
      return run_decomp(config);
    case ExperimentKind::D0Sweep:
      return run_d0(config);
    case ExperimentKind::Volume:
      return run_volume(config);
    case ExperimentKind::Intersect:
      return intersect_sweep(config);
    case ExperimentKind::Blocking:
      return run_blocking(config);
    case ExperimentKind::PairFunctional:
      return run_pair(config);
  }
  throw PreconditionError("unknown experiment kind");
}

void write_report(const RunReport& report, const std::string& out_path, ResultFormat format) {
  write_results(report.rows, out_path, format);
  write_text_atomic(out_path + ".meta.json", report.metadata_json);
}

std::vector<UnionPair> decomp_battery() {
  std::vector<UnionPair> out;
  auto pt = [](double x, double y = 0.0, double z = 0.0, double w = 0.0) { Point4 p;
    p.x = {x, y, z, w};
    return p;
  };
  auto add = [&](std::string name, std::vector<Point4> a, std::vector<Point4> b) {
    UnionPair p;
    p.name = std::move(name);
    p.a = BallUnion(std::move(a), 1.0);
    p.b = BallUnion(std::move(b), 1.0);
    for (const auto& ca : p.a.centers()) {
      for (const auto& cb : p.b.centers()) {
        if (dist(ca, cb) < 2.0) p.overlapping = true;
      }
    }
    out.push_back(std::move(p));
  };
  // Short random walks with step 0.5 from a fixed stream: sausage-like
  // clusters that are cheap to estimate.
  RngStream gen(0x6261747465727931ull);
  auto walk = [&](Point4 start, int n) {
    std::vector<Point4> v{start};
    for (int i = 1; i < n; ++i) v.push_back(sphere_sample(gen, v.back(), 0.5));
    return v;
  };
  auto cluster = [&](Point4 center, double radius, int n) {
    std::vector<Point4> v;
    for (int i = 0; i < n; ++i) v.push_back(ball_sample(gen, center, radius));
    return v;
  };

  // Disjoint.
  add("disjoint.d3", {pt(0)}, {pt(3)});
  add("disjoint.d2.5", {pt(0)}, {pt(0, 2.5)});
  add("disjoint.d2.05", {pt(0)}, {pt(0, 0, 2.05)});
  add("disjoint.d6", {pt(0)}, {pt(0, 0, 0, 6)});
  add("disjoint.chains", {pt(0), pt(1), pt(2)}, {pt(0, 4), pt(1, 4), pt(2, 4)});
  add("disjoint.clusters", cluster(pt(0), 1.0, 5), cluster(pt(7), 1.0, 5));
  // Overlapping.
  add("overlap.d1", {pt(0)}, {pt(1)});
  add("overlap.d0.5", {pt(0)}, {pt(0, 0.5)});
  add("overlap.d1.5", {pt(0)}, {pt(0, 0, 1.5)});
  add("overlap.d1.9", {pt(0)}, {pt(1.9)});
  add("overlap.interleaved", {pt(0), pt(2), pt(4)}, {pt(1), pt(3)});
  add("overlap.clusters", cluster(pt(0), 2.0, 6), cluster(pt(0), 2.0, 6));
  {
    auto w = walk(pt(0), 20);
    add("overlap.walk_halves", std::vector<Point4>(w.begin(), w.begin() + 10),
        std::vector<Point4>(w.begin() + 10, w.end()));
  }
  add("overlap.one_shared", {pt(0), pt(1.5)}, {pt(0), pt(-1.5)});
  // Nested: B uses a subset of A's centers.
  add("nested.identical_ball", {pt(0)}, {pt(0)});
  add("nested.identical_chain", {pt(0), pt(1.2), pt(2.4)}, {pt(0), pt(1.2), pt(2.4)});
  add("nested.pair_in_four", {pt(0), pt(1.5), pt(3), pt(4.5)}, {pt(1.5), pt(3)});
  add("nested.end_ball", {pt(0), pt(1), pt(2)}, {pt(2)});
  {
    auto w = walk(pt(0), 20);
    add("nested.walk_subset", w, std::vector<Point4>(w.begin() + 5, w.begin() + 15));
  }
  {
    auto cl = cluster(pt(0), 1.5, 8);
    add("nested.cluster_subset", cl, std::vector<Point4>(cl.begin(), cl.begin() + 3));
  }
  return out;
}

IntersectionBound intersection_bound(const BallUnion& a, const BallUnion& b) {
  IntersectionBound out;
  if (a.empty() || b.empty()) return out;
  if (a.radius() != b.radius()) throw PreconditionError("intersection_bound: radii differ");
  const double r = a.radius();
  std::vector<Point4> shared;
  double best = 0.0;
  for (const auto& ca : a.centers()) {
    for (const auto& cb : b.centers()) {
      const double s = dist(ca, cb);
      if (s == 0.0) shared.push_back(ca);
      if (s < 2.0 * r) best = std::max(best, r - 0.5 * s);
    }
  }
  std::sort(shared.begin(), shared.end(), [](const Point4& p, const Point4& q) { return p.x < q.x; });
  shared.erase(std::unique(shared.begin(), shared.end()), shared.end());
  out.lens_capacity = ball_capacity(best);
  if (!shared.empty()) out.shared = BallUnion(std::move(shared), r);
  return out;
}

}  // namespace sausage
