// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "sausage/errors.hpp"
#include "sausage/experiment_config.hpp"
#include "sausage/results_io.hpp"

namespace sausage {
namespace {

namespace fs = std::filesystem;

bool has_problem(const ExperimentConfig& c, const std::string& prefix) {
  const auto p = c.problems();
  return std::any_of(p.begin(), p.end(), [&](const std::string& s) { return s.rfind(prefix, 0) == 0; });
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("sausage_test_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

ResultRow sample_row(int k) {
  ResultRow r;
  r.experiment = "cap.rho=" + std::to_string(k);
  r.kind = "cap";
  r.t = 1.0 / 3.0;
  r.delta = 0.1;
  r.r_sausage = 1.0;
  r.n_paths = 1;
  r.n_walkers = 100000;
  r.seed = 18446744073709551615ull;
  r.mean = 19.739208802178716 * k;
  r.std_error = 1e-17;
  r.n = 100000;
  r.wall_time_s = 0.0;
  r.diag_escape_rate = 2.5e-5;
  r.diag_clip_count = 3;
  return r;
}

TEST(ConfigTest, KindNamesRoundTrip) {
  for (auto k : {ExperimentKind::Cap, ExperimentKind::Lln, ExperimentKind::Decomp, ExperimentKind::D0Sweep,
                 ExperimentKind::Volume, ExperimentKind::Intersect, ExperimentKind::Blocking,
                 ExperimentKind::PairFunctional}) {
    EXPECT_EQ(parse_kind(kind_name(k)), k);
  }
  EXPECT_FALSE(parse_kind("nope").has_value());
}

TEST(ConfigTest, DefaultsAreValid) {
  for (auto k : {ExperimentKind::Cap, ExperimentKind::Lln, ExperimentKind::Decomp, ExperimentKind::D0Sweep,
                 ExperimentKind::Volume, ExperimentKind::Intersect, ExperimentKind::Blocking,
                 ExperimentKind::PairFunctional}) {
    const ExperimentConfig c = default_config(k);
    EXPECT_TRUE(c.problems().empty()) << kind_name(k) << ": " << c.problems().front();
    EXPECT_EQ(c.kind, k);
  }
}

TEST(ConfigTest, EachViolationHasItsOwnMessage) {
  ExperimentConfig c = default_config(ExperimentKind::Lln);
  c.t_grid.clear();
  EXPECT_TRUE(has_problem(c, "t_grid: must not be empty"));

  c = default_config(ExperimentKind::Lln);
  c.delta = 1.0;
  EXPECT_TRUE(has_problem(c, "delta:"));

  c = default_config(ExperimentKind::Lln);
  c.wos.eps_hit = 2.0;
  EXPECT_TRUE(has_problem(c, "wos.eps_hit:"));

  c = default_config(ExperimentKind::Lln);
  c.wos.escape_factor = 1.5;
  EXPECT_TRUE(has_problem(c, "wos.escape_factor:"));

  c = default_config(ExperimentKind::Lln);
  c.t_grid = {2.0};
  EXPECT_TRUE(has_problem(c, "t_grid:"));

  c = default_config(ExperimentKind::Cap);
  c.n_walkers = 10;
  EXPECT_TRUE(has_problem(c, "n_walkers:"));

  c = default_config(ExperimentKind::Lln);
  c.t_grid.clear();
  c.delta = -1.0;
  c.wos.eps_hit = 5.0;
  EXPECT_GE(c.problems().size(), 3u);
  try {
    c.validate();
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.problems(), c.problems());
  }
}

TEST(ConfigTest, IniSectionsApplyInOrder) {
  const char* ini =
      "seed = 7\n"
      "n_walkers = 5000\n"
      "[wos]\n"
      "eps_hit = 0.002\n"
      "restart_mode = weighted\n"
      "[cap]\n"
      "n_walkers = 3000\n"
      "radii = 1, 2\n"
      "[lln]\n"
      "n_walkers = 99999\n";
  const ExperimentConfig c = parse_config(ini, ExperimentKind::Cap);
  EXPECT_EQ(c.seed, 7u);
  EXPECT_EQ(c.n_walkers, 3000u);
  EXPECT_DOUBLE_EQ(c.wos.eps_hit, 0.002);
  EXPECT_EQ(c.wos.restart_mode, RestartMode::Weighted);
  EXPECT_EQ(c.radii, (std::vector<double>{1.0, 2.0}));
}

TEST(ConfigTest, UnknownKeysAndSectionsAreReported) {
  try {
    parse_config("bogus = 1\n[mystery]\nx = 2\n[wos]\nstep = 3\n", ExperimentKind::Cap);
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.problems().size(), 3u);
  }
  EXPECT_THROW(parse_config("delta = abc\n", ExperimentKind::Cap), ConfigError);
}

TEST(ConfigTest, MissingFileIsAnIoError) {
  EXPECT_THROW(load_config("/nonexistent/dir/config.ini", ExperimentKind::Cap), IoError);
}

TEST(ConfigTest, DescribeCoversTheOverrides) {
  ExperimentConfig c = default_config(ExperimentKind::Cap);
  for (const auto& [key, value] : describe(c)) {
    if (key == "kind" || key == "out_path") continue;
    ExperimentConfig copy = default_config(ExperimentKind::Cap);
    EXPECT_NO_THROW(set_field(copy, key, value)) << key;
  }
  EXPECT_THROW(set_field(c, "no_such_key", "1"), ConfigError);
}

TEST(ResultsTest, HeaderAndSingleRow) {
  const std::vector<ResultRow> rows{sample_row(1)};
  const std::string csv = format_csv(rows);
  EXPECT_EQ(csv.substr(0, kCsvHeader.size()), kCsvHeader);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
}

TEST(ResultsTest, CsvAndJsonRoundTripExactly) {
  const std::vector<ResultRow> rows{sample_row(1), sample_row(2), sample_row(3)};
  EXPECT_EQ(parse_csv(format_csv(rows)), rows);
  EXPECT_EQ(parse_json(format_json(rows)), rows);
}

TEST(ResultsTest, RewriteIsByteIdentical) {
  const fs::path dir = scratch_dir("rewrite");
  const std::vector<ResultRow> rows{sample_row(1), sample_row(2)};
  for (auto fmt : {ResultFormat::Csv, ResultFormat::Json}) {
    const std::string a = (dir / "a.out").string(), b = (dir / "b.out").string();
    write_results(rows, a, fmt);
    write_results(read_results(a), b, fmt);
    EXPECT_EQ(slurp(a), slurp(b));
  }
  fs::remove_all(dir);
}

TEST(ResultsTest, UnwritablePathLeavesNoFile) {
  const fs::path dir = scratch_dir("unwritable");
  const std::string target = (dir / "missing" / "out.csv").string();
  const std::vector<ResultRow> rows{sample_row(1)};
  EXPECT_THROW(write_results(rows, target, ResultFormat::Csv), IoError);
  EXPECT_FALSE(fs::exists(target));
  EXPECT_TRUE(fs::is_empty(dir));
  fs::remove_all(dir);
}

TEST(ResultsTest, EmptyRowsAreRejected) {
  EXPECT_THROW(write_results({}, "/tmp/never.csv", ResultFormat::Csv), PreconditionError);
}

TEST(ResultsTest, HeaderMismatchNamesTheColumn) {
  std::string csv = format_csv(std::vector<ResultRow>{sample_row(1)});
  csv.replace(csv.find("std_error"), 9, "stderr");
  try {
    parse_csv(csv);
    FAIL() << "expected IoError";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("std_error"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_csv("experiment,kind\n"), IoError);
}

TEST(ResultsTest, MalformedJsonIsAnIoError) {
  EXPECT_THROW(parse_json("{\"a\": 1}"), IoError);
  EXPECT_THROW(parse_json("[{\"experiment\": 3}]"), IoError);
}

}  // namespace
}  // namespace sausage
