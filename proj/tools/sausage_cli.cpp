// SPDX-License-Identifier: Apache-2.0
//
// sausage <kind> --seed N [--config file.ini] [--set key=value ...]
//
// Exit codes: 0 ok, 2 bad configuration, 3 file error, 4 run finished but
// failed its diagnostics (rows are tagged).

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/core.h>

#include "sausage/errors.hpp"
#include "sausage/experiment_config.hpp"
#include "sausage/runner.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitInvalid = 4;

struct Options {
  std::string config_path;
  std::uint64_t seed = 0;
  std::optional<unsigned> workers;
  std::string out_path;
  std::string format = "csv";
  std::vector<std::string> overrides;
  bool record_timing = false;
  bool dry_run = false;
};

void add_options(CLI::App& sub, Options& o) {
  sub.add_option("--config", o.config_path, "INI file; top level, [wos] and [<kind>] sections")
      ->check(CLI::ExistingFile);
  sub.add_option("--seed", o.seed, "Master seed")->required();
  sub.add_option("--workers", o.workers, "Worker threads (does not change results)");
  sub.add_option("--out", o.out_path, "Output file (default: stdout); writes <out>.meta.json alongside");
  sub.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub.add_option("--set", o.overrides, "Override a config field, e.g. --set t_grid=100,1000")
      ->allow_extra_args(false);
  sub.add_flag("--record-timing", o.record_timing, "Store wall times in rows (output no longer byte-stable)");
  sub.add_flag("--dry-run", o.dry_run, "Validate and print the resolved configuration");
}

sausage::ExperimentConfig resolve(sausage::ExperimentKind kind, const Options& o) {
  using namespace sausage;
  ExperimentConfig c = o.config_path.empty() ? default_config(kind) : load_config(o.config_path, kind);
  std::vector<std::string> problems;
  for (const auto& kv : o.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      problems.push_back(fmt::format("--set {}: expected key=value", kv));
      continue;
    }
    try {
      set_field(c, kv.substr(0, eq), kv.substr(eq + 1));
    } catch (const ConfigError& e) {
      problems.insert(problems.end(), e.problems().begin(), e.problems().end());
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  c.seed = o.seed;
  if (o.workers) c.workers = *o.workers;
  if (!o.out_path.empty()) c.out_path = o.out_path;
  if (o.record_timing) c.record_timing = true;
  c.validate();
  return c;
}

int run(sausage::ExperimentKind kind, const Options& o) {
  using namespace sausage;
  const ExperimentConfig c = resolve(kind, o);
  if (o.dry_run) {
    for (const auto& [k, v] : describe(c)) fmt::print("{} = {}\n", k, v);
    return 0;
  }
  const RunReport report = run_experiment(c);
  const ResultFormat format = o.format == "json" ? ResultFormat::Json : ResultFormat::Csv;
  if (c.out_path.empty()) {
    const std::string text = format == ResultFormat::Json ? format_json(report.rows) : format_csv(report.rows);
    std::fwrite(text.data(), 1, text.size(), stdout);
  } else {
    write_report(report, c.out_path, format);
  }
  if (!report.valid) {
    fmt::print(stderr, "run marked invalid: walker truncation rate above {}\n", kMaxTruncationRate);
    return kExitInvalid;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace sausage;
  CLI::App app{"Wiener sausage capacity experiments in R^4"};
  app.require_subcommand(1);

  Options options;
  std::optional<ExperimentKind> chosen;
  for (auto kind : {ExperimentKind::Cap, ExperimentKind::Lln, ExperimentKind::Decomp, ExperimentKind::D0Sweep,
                    ExperimentKind::Volume, ExperimentKind::Intersect, ExperimentKind::Blocking,
                    ExperimentKind::PairFunctional}) {
    CLI::App* sub = app.add_subcommand(std::string(kind_name(kind)));
    add_options(*sub, options);
    sub->callback([&chosen, kind] { chosen = kind; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    return run(*chosen, options);
  } catch (const ConfigError& e) {
    for (const auto& p : e.problems()) fmt::print(stderr, "config: {}\n", p);
    return kExitConfig;
  } catch (const IoError& e) {
    fmt::print(stderr, "io: {}\n", e.what());
    return kExitIo;
  }
}
