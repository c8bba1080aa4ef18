// SPDX-License-Identifier: Apache-2.0
#include "sausage/results_io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "sausage/errors.hpp"

namespace sausage {
namespace {

constexpr std::size_t kColumns = 14;

std::string real(double v) { return fmt::format("{:.17g}", v); }

void check_text_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") != std::string::npos) {
    throw PreconditionError("result field contains a CSV separator: " + s);
  }
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

double parse_real(std::string_view s, std::size_t line, const char* column) {
  double v = 0.0;
  // from_chars does not accept "inf"/"nan" spellings written by fmt in all
  // cases, so handle them explicitly.
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw IoError("<csv>", fmt::format("line {}: column {}: bad number '{}'", line, column, s));
  }
  return v;
}

std::uint64_t parse_u64(std::string_view s, std::size_t line, const char* column) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size()) {
    throw IoError("<csv>", fmt::format("line {}: column {}: bad integer '{}'", line, column, s));
  }
  return v;
}

}  // namespace

std::string format_csv(std::span<const ResultRow> rows) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : rows) {
    check_text_field(r.experiment);
    check_text_field(r.kind);
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", r.experiment, r.kind, real(r.t),
                       real(r.delta), real(r.r_sausage), r.n_paths, r.n_walkers, r.seed, real(r.mean),
                       real(r.std_error), r.n, real(r.wall_time_s), real(r.diag_escape_rate),
                       r.diag_clip_count);
  }
  return out;
}

std::string format_json(std::span<const ResultRow> rows) {
  // Reals are written by hand with 17 digits so JSON and CSV agree exactly.
  std::string out = "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out += fmt::format(
        "  {{\"experiment\": {}, \"kind\": {}, \"t\": {}, \"delta\": {}, \"r_sausage\": {}, "
        "\"n_paths\": {}, \"n_walkers\": {}, \"seed\": {}, \"mean\": {}, \"std_error\": {}, \"n\": {}, "
        "\"wall_time_s\": {}, \"diag_escape_rate\": {}, \"diag_clip_count\": {}}}{}\n",
        nlohmann::json(r.experiment).dump(), nlohmann::json(r.kind).dump(), real(r.t), real(r.delta),
        real(r.r_sausage), r.n_paths, r.n_walkers, r.seed, real(r.mean), real(r.std_error), r.n,
        real(r.wall_time_s), real(r.diag_escape_rate), r.diag_clip_count, i + 1 < rows.size() ? "," : "");
  }
  out += "]\n";
  return out;
}

std::vector<ResultRow> parse_csv(std::string_view text) {
  std::vector<ResultRow> rows;
  std::size_t pos = 0;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!header_seen) {
      if (line != kCsvHeader) {
        const auto got = split(line);
        const auto want = split(kCsvHeader);
        for (std::size_t i = 0; i < want.size(); ++i) {
          if (i >= got.size() || got[i] != want[i]) {
            throw IoError("<csv>", fmt::format("header mismatch at column '{}'", want[i]));
          }
        }
        throw IoError("<csv>", "header has extra columns");
      }
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto f = split(line);
    if (f.size() != kColumns) {
      throw IoError("<csv>", fmt::format("line {}: expected {} columns, got {}", line_no, kColumns, f.size()));
    }
    ResultRow r;
    r.experiment = std::string(f[0]);
    r.kind = std::string(f[1]);
    r.t = parse_real(f[2], line_no, "t");
    r.delta = parse_real(f[3], line_no, "delta");
    r.r_sausage = parse_real(f[4], line_no, "r_sausage");
    r.n_paths = parse_u64(f[5], line_no, "n_paths");
    r.n_walkers = parse_u64(f[6], line_no, "n_walkers");
    r.seed = parse_u64(f[7], line_no, "seed");
    r.mean = parse_real(f[8], line_no, "mean");
    r.std_error = parse_real(f[9], line_no, "std_error");
    r.n = parse_u64(f[10], line_no, "n");
    r.wall_time_s = parse_real(f[11], line_no, "wall_time_s");
    r.diag_escape_rate = parse_real(f[12], line_no, "diag_escape_rate");
    r.diag_clip_count = parse_u64(f[13], line_no, "diag_clip_count");
    rows.push_back(std::move(r));
  }
  if (!header_seen) throw IoError("<csv>", "missing header");
  return rows;
}

std::vector<ResultRow> parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("<json>", e.what());
  }
  if (!doc.is_array()) throw IoError("<json>", "expected an array of rows");
  std::vector<ResultRow> rows;
  for (const auto& o : doc) {
    try {
      ResultRow r;
      o.at("experiment").get_to(r.experiment);
      o.at("kind").get_to(r.kind);
      o.at("t").get_to(r.t);
      o.at("delta").get_to(r.delta);
      o.at("r_sausage").get_to(r.r_sausage);
      o.at("n_paths").get_to(r.n_paths);
      o.at("n_walkers").get_to(r.n_walkers);
      o.at("seed").get_to(r.seed);
      o.at("mean").get_to(r.mean);
      o.at("std_error").get_to(r.std_error);
      o.at("n").get_to(r.n);
      o.at("wall_time_s").get_to(r.wall_time_s);
      o.at("diag_escape_rate").get_to(r.diag_escape_rate);
      o.at("diag_clip_count").get_to(r.diag_clip_count);
      rows.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw IoError("<json>", e.what());
    }
  }
  return rows;
}

void write_text_atomic(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path, "cannot open for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError(path, "write failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError(path, "rename failed");
  }
}

void write_results(std::span<const ResultRow> rows, const std::string& path, ResultFormat format) {
  if (rows.empty()) throw PreconditionError("write_results: no rows");
  write_text_atomic(path, format == ResultFormat::Csv ? format_csv(rows) : format_json(rows));
}

std::vector<ResultRow> read_results(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && text[first] == '[') return parse_json(text);
    return parse_csv(text);
  } catch (const IoError& e) {
    throw IoError(path, e.what());
  }
}

}  // namespace sausage
