// SPDX-License-Identifier: Apache-2.0
#include "sausage/experiment_config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "sausage/errors.hpp"

namespace sausage {
namespace {

constexpr std::array<std::pair<ExperimentKind, std::string_view>, 8> kKindNames{{
    {ExperimentKind::Cap, "cap"},
    {ExperimentKind::Lln, "lln"},
    {ExperimentKind::Decomp, "decomp"},
    {ExperimentKind::D0Sweep, "d0"},
    {ExperimentKind::Volume, "volume"},
    {ExperimentKind::Intersect, "intersect"},
    {ExperimentKind::Blocking, "blocking"},
    {ExperimentKind::PairFunctional, "pair"},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
  throw ConfigError({fmt::format("{}: cannot parse '{}' as {}", key, value, expected)});
}

double to_double(std::string_view key, std::string_view v) {
  v = trim(v);
  double out = 0.0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || end != v.data() + v.size() || v.empty()) bad_value(key, v, "a number");
  return out;
}

std::uint64_t to_u64(std::string_view key, std::string_view v) {
  v = trim(v);
  std::uint64_t out = 0;
  const auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec == std::errc{} && end == v.data() + v.size() && !v.empty()) return out;
  // Accept integral values written in floating notation, e.g. 1e5.
  const double d = to_double(key, v);
  if (d < 0.0 || d > 1.8e19 || d != static_cast<double>(static_cast<std::uint64_t>(d))) {
    bad_value(key, v, "a non-negative integer");
  }
  return static_cast<std::uint64_t>(d);
}

std::vector<double> to_list(std::string_view key, std::string_view v) {
  std::vector<double> out;
  v = trim(v);
  if (v.empty()) return out;
  std::size_t pos = 0;
  while (pos <= v.size()) {
    const std::size_t comma = v.find(',', pos);
    const std::size_t end = comma == std::string_view::npos ? v.size() : comma;
    out.push_back(to_double(key, v.substr(pos, end - pos)));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  v = trim(v);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad_value(key, v, "a boolean");
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt::format("{}", v[i]);
  }
  return out;
}

bool uses_walkers(ExperimentKind k) {
  return k == ExperimentKind::Cap || k == ExperimentKind::Lln || k == ExperimentKind::Decomp ||
         k == ExperimentKind::Blocking;
}

}  // namespace

std::string_view kind_name(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_kind(std::string_view name) {
  for (const auto& [k, n] : kKindNames) {
    if (n == name) return k;
  }
  return std::nullopt;
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  switch (kind) {
    case ExperimentKind::Cap:
      c.t_grid = {1.0};
      c.n_paths = 1;
      c.n_walkers = 100000;
      break;
    case ExperimentKind::Lln:
      break;
    case ExperimentKind::Decomp:
      c.t_grid = {1.0};
      c.n_paths = 1;
      c.n_walkers = 100000;
      break;
    case ExperimentKind::D0Sweep:
      c.t_grid = {1e2, 1e3, 1e4, 1e5};
      c.n_paths = 10000;
      c.n_walkers = 1;
      break;
    case ExperimentKind::Volume:
      c.t_grid = {500.0};
      c.n_paths = 200;
      c.n_walkers = 20000;
      break;
    case ExperimentKind::Intersect:
      c.t_grid = {1e2, 1e3, 1e4};
      c.r_sausage = 0.5;
      c.n_paths = 200;
      c.n_walkers = 16;
      break;
    case ExperimentKind::Blocking:
      c.t_grid = {1e2, 1e3};
      c.n_paths = 20;
      c.n_walkers = 10000;
      break;
    case ExperimentKind::PairFunctional:
      c.t_grid = {25.0};
      c.n_paths = 10000;
      c.n_walkers = 1;
      break;
  }
  return c;
}

std::vector<std::string> ExperimentConfig::problems() const {
  std::vector<std::string> p;
  if (t_grid.empty()) {
    p.emplace_back("t_grid: must not be empty");
  } else {
    for (double t : t_grid) {
      if (!(t > 0.0)) {
        p.emplace_back("t_grid: values must be positive");
        break;
      }
    }
    for (std::size_t i = 1; i < t_grid.size(); ++i) {
      if (!(t_grid[i] > t_grid[i - 1])) {
        p.emplace_back("t_grid: must be strictly increasing");
        break;
      }
    }
  }
  if ((kind == ExperimentKind::Lln || kind == ExperimentKind::Intersect || kind == ExperimentKind::Blocking) &&
      !t_grid.empty() && !(t_grid.front() > 2.7183)) {
    p.emplace_back("t_grid: this kind needs t > e (its normalizers use log log t)");
  }
  if (!(delta > 0.0) || !(delta < 1.0)) p.emplace_back("delta: must lie in (0, 1)");
  if (!(r_sausage > 0.0)) p.emplace_back("r_sausage: must be positive");
  if (n_paths < 1) p.emplace_back("n_paths: must be at least 1");
  if (n_walkers < 1) {
    p.emplace_back("n_walkers: must be at least 1");
  } else if ((uses_walkers(kind) || kind == ExperimentKind::Volume) && n_walkers < 1000) {
    p.emplace_back("n_walkers: capacity and volume estimates need at least 1000 walkers");
  }
  if (kind == ExperimentKind::D0Sweep && n_paths < 1000) {
    p.emplace_back("n_paths: the D0 sweep needs at least 1000 paths");
  }
  if (!(wos.eps_hit > 0.0)) {
    p.emplace_back("wos.eps_hit: must be positive");
  } else if (!(wos.eps_hit < r_sausage)) {
    p.emplace_back("wos.eps_hit: must be smaller than r_sausage");
  }
  if (!(wos.escape_factor > 2.0)) {
    p.emplace_back("wos.escape_factor: escape radius must exceed the launch radius (factor > 2)");
  }
  if (wos.max_steps < 1) p.emplace_back("wos.max_steps: must be at least 1");
  if (workers < 1) p.emplace_back("workers: must be at least 1");
  if (h < 0.0) p.emplace_back("h: must be non-negative (0 selects the default)");
  if (kind == ExperimentKind::PairFunctional && h > 1.0) p.emplace_back("h: pair functional step must be <= 1");
  if (!(horizon_factor >= 1.0)) p.emplace_back("horizon_factor: must be at least 1");
  if (levels < 0 || levels > 20) p.emplace_back("levels: must lie in [0, 20]");
  auto positive_list = [&](const std::vector<double>& v, const char* name) {
    if (v.empty()) {
      p.push_back(fmt::format("{}: must not be empty", name));
      return;
    }
    for (double x : v) {
      if (!(x > 0.0)) {
        p.push_back(fmt::format("{}: values must be positive", name));
        return;
      }
    }
  };
  if (kind == ExperimentKind::Cap) positive_list(radii, "radii");
  if (kind == ExperimentKind::PairFunctional) positive_list(z_norms, "z_norms");
  if (kind == ExperimentKind::Intersect) positive_list(z_multiples, "z_multiples");
  return p;
}

void ExperimentConfig::validate() const {
  auto p = problems();
  if (!p.empty()) throw ConfigError(std::move(p));
}

void set_field(ExperimentConfig& c, std::string_view key, std::string_view value) {
  const std::string k(trim(key));
  if (k == "t_grid") c.t_grid = to_list(k, value);
  else if (k == "delta") c.delta = to_double(k, value);
  else if (k == "r_sausage") c.r_sausage = to_double(k, value);
  else if (k == "n_paths") c.n_paths = to_u64(k, value);
  else if (k == "n_walkers") c.n_walkers = to_u64(k, value);
  else if (k == "seed") c.seed = to_u64(k, value);
  else if (k == "workers") c.workers = static_cast<unsigned>(to_u64(k, value));
  else if (k == "out_path") c.out_path = std::string(trim(value));
  else if (k == "radii") c.radii = to_list(k, value);
  else if (k == "z_norms") c.z_norms = to_list(k, value);
  else if (k == "z_multiples") c.z_multiples = to_list(k, value);
  else if (k == "h") c.h = to_double(k, value);
  else if (k == "horizon_factor") c.horizon_factor = to_double(k, value);
  else if (k == "levels") c.levels = static_cast<int>(to_u64(k, value));
  else if (k == "record_timing") c.record_timing = to_bool(k, value);
  else if (k == "wos.eps_hit") c.wos.eps_hit = to_double(k, value);
  else if (k == "wos.escape_factor") c.wos.escape_factor = to_double(k, value);
  else if (k == "wos.max_steps") c.wos.max_steps = to_u64(k, value);
  else if (k == "wos.restart_mode") {
    const auto v = trim(value);
    if (v == "roulette") c.wos.restart_mode = RestartMode::RussianRoulette;
    else if (v == "weighted") c.wos.restart_mode = RestartMode::Weighted;
    else bad_value(k, v, "'roulette' or 'weighted'");
  } else {
    throw ConfigError({fmt::format("{}: unknown key", k)});
  }
}

ExperimentConfig parse_config(std::string_view ini_text, ExperimentKind kind) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    std::istringstream in{std::string(ini_text)};
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError({fmt::format("line {}: {}", e.line(), e.message())});
  }

  ExperimentConfig c = default_config(kind);
  std::vector<std::string> problems;
  auto apply = [&](const std::string& key, const std::string& value) {
    try {
      set_field(c, key, value);
    } catch (const ConfigError& e) {
      problems.insert(problems.end(), e.problems().begin(), e.problems().end());
    }
  };
  // Top-level keys first, then [wos], then the kind's own section.
  for (const auto& [key, node] : tree) {
    if (node.empty()) apply(key, node.data());
  }
  for (const auto& [section, node] : tree) {
    if (node.empty()) continue;
    if (section == "wos") {
      for (const auto& [key, leaf] : node) apply("wos." + key, leaf.data());
    } else if (!parse_kind(section)) {
      problems.push_back(fmt::format("[{}]: unknown section", section));
    }
  }
  if (const auto own = tree.get_child_optional(std::string(kind_name(kind)))) {
    for (const auto& [key, leaf] : *own) apply(key, leaf.data());
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return c;
}

ExperimentConfig load_config(const std::string& path, ExperimentKind kind) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), kind);
}

std::vector<std::pair<std::string, std::string>> describe(const ExperimentConfig& c) {
  return {
      {"kind", std::string(kind_name(c.kind))},
      {"t_grid", fmt_list(c.t_grid)},
      {"delta", fmt::format("{}", c.delta)},
      {"r_sausage", fmt::format("{}", c.r_sausage)},
      {"n_paths", fmt::format("{}", c.n_paths)},
      {"n_walkers", fmt::format("{}", c.n_walkers)},
      {"seed", fmt::format("{}", c.seed)},
      {"workers", fmt::format("{}", c.workers)},
      {"out_path", c.out_path},
      {"radii", fmt_list(c.radii)},
      {"z_norms", fmt_list(c.z_norms)},
      {"z_multiples", fmt_list(c.z_multiples)},
      {"h", fmt::format("{}", c.h)},
      {"horizon_factor", fmt::format("{}", c.horizon_factor)},
      {"levels", fmt::format("{}", c.levels)},
      {"record_timing", c.record_timing ? "true" : "false"},
      {"wos.eps_hit", fmt::format("{}", c.wos.eps_hit)},
      {"wos.escape_factor", fmt::format("{}", c.wos.escape_factor)},
      {"wos.max_steps", fmt::format("{}", c.wos.max_steps)},
      {"wos.restart_mode", c.wos.restart_mode == RestartMode::RussianRoulette ? "roulette" : "weighted"},
  };
}

}  // namespace sausage
