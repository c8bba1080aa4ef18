// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sausage/wos.hpp"

namespace sausage {

enum class ExperimentKind { Cap, Lln, Decomp, D0Sweep, Volume, Intersect, Blocking, PairFunctional };

/// CLI / CSV spelling: cap, lln, decomp, d0, volume, intersect, blocking, pair.
std::string_view kind_name(ExperimentKind kind);
std::optional<ExperimentKind> parse_kind(std::string_view name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::Lln;
  std::vector<double> t_grid{100.0, 1000.0, 10000.0};
  double delta = 0.1;
  double r_sausage = 1.0;
  std::uint64_t n_paths = 100;
  /// Walkers per capacity estimate; probes per path for Volume.
  std::uint64_t n_walkers = 20000;
  WosParams wos;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::string out_path;

  /// Ball radii for Cap.
  std::vector<double> radii{0.5, 1.0, 2.0, 4.0};
  /// Start distances |z| for PairFunctional.
  std::vector<double> z_norms{40.0};
  /// Start distances for Intersect, in units of sqrt(t).
  std::vector<double> z_multiples{0.25, 1.0, 4.0};
  /// Functional step; 0 selects the per-kind default.
  double h = 0.0;
  /// Second-path horizon = horizon_factor * max(t, |z|^2) for
  /// PairFunctional and horizon_factor * t for Intersect.
  double horizon_factor = 100.0;
  /// Dyadic levels for Blocking.
  int levels = 1;
  /// Write measured wall times into the rows (breaks byte-identity).
  bool record_timing = false;

  /// Every violated constraint, one message each; empty when valid.
  std::vector<std::string> problems() const;
  /// Throws ConfigError listing problems() if any.
  void validate() const;
};

/// Defaults for one experiment kind.
ExperimentConfig default_config(ExperimentKind kind);

/// Reads an INI file. Keys at top level apply to every kind; keys in the
/// section named after `kind` (e.g. [lln]) override them; [wos] holds
/// eps_hit, escape_factor, max_steps, restart_mode. Unknown keys and
/// malformed values are ConfigErrors; an unreadable file is an IoError.
ExperimentConfig load_config(const std::string& path, ExperimentKind kind);

/// Same, from INI text.
ExperimentConfig parse_config(std::string_view ini_text, ExperimentKind kind);

/// Sets one field by name (the INI key, "wos.<key>" for walker params).
/// Throws ConfigError on an unknown key or a malformed value.
void set_field(ExperimentConfig& config, std::string_view key, std::string_view value);

/// Field name -> value as it would be written in an INI file.
std::vector<std::pair<std::string, std::string>> describe(const ExperimentConfig& config);

}  // namespace sausage
