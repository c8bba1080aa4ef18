// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "sausage/ball_union.hpp"
#include "sausage/experiment_config.hpp"
#include "sausage/results_io.hpp"

namespace sausage {

/// Runs with a larger share of walkers stopped by max_steps are invalid.
inline constexpr double kMaxTruncationRate = 1e-3;

/// Appended to the experiment id of rows from an invalid run.
inline constexpr std::string_view kInvalidTag = "[invalid]";

struct RunReport {
  std::vector<ResultRow> rows;
  bool valid = true;
  /// Resolved configuration, kind defaults, and run notes as JSON.
  std::string metadata_json;
};

/// Validates the config (ConfigError listing every problem), then runs the
/// kind's pipeline. Rows come out in a fixed order and are a pure function
/// of the config; the worker count never changes them.
RunReport run_experiment(const ExperimentConfig& config);

RunReport lln_sweep(const ExperimentConfig& config);
RunReport intersect_sweep(const ExperimentConfig& config);

/// Writes rows to config.out_path and metadata to "<out_path>.meta.json".
void write_report(const RunReport& report, const std::string& out_path, ResultFormat format);

/// A pair of unions used by the decomposition battery.
struct UnionPair {
  std::string name;
  BallUnion a;
  BallUnion b;
  /// Some ball of A meets some ball of B.
  bool overlapping = false;
};

/// Twenty fixed configurations of unit-radius unions: disjoint, overlapping
/// and nested (B built from a subset of A's centers).
std::vector<UnionPair> decomp_battery();

/// Lower bound on Cap(A n B) from pieces that lie inside both unions:
/// the largest ball inscribed in a lens of two overlapping balls, 2 pi^2
/// (r - s/2)^2 for centers s apart. Balls shared verbatim by A and B are
/// returned separately in `shared` so the caller can estimate their
/// capacity.
struct IntersectionBound {
  double lens_capacity = 0.0;
  BallUnion shared;
};
IntersectionBound intersection_bound(const BallUnion& a, const BallUnion& b);

}  // namespace sausage
