// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sausage {

struct ResultRow {
  std::string experiment;
  std::string kind;
  double t = 0.0;
  double delta = 0.0;
  double r_sausage = 0.0;
  std::uint64_t n_paths = 0;
  std::uint64_t n_walkers = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t n = 0;
  double wall_time_s = 0.0;
  double diag_escape_rate = 0.0;
  std::uint64_t diag_clip_count = 0;

  bool operator==(const ResultRow&) const = default;
};

enum class ResultFormat { Csv, Json };

inline constexpr std::string_view kCsvHeader =
    "experiment,kind,t,delta,r_sausage,n_paths,n_walkers,seed,mean,std_error,n,wall_time_s,"
    "diag_escape_rate,diag_clip_count";

/// Header plus one line per row; reals with 17 significant digits.
std::string format_csv(std::span<const ResultRow> rows);
/// Array of objects with the CSV column names.
std::string format_json(std::span<const ResultRow> rows);

/// Throws IoError naming the offending line or column on malformed input.
std::vector<ResultRow> parse_csv(std::string_view text);
std::vector<ResultRow> parse_json(std::string_view text);

/// Writes to a temporary file next to `path` and renames it into place, so
/// a failed write leaves no partial file. Throws IoError.
void write_text_atomic(const std::string& path, std::string_view content);

/// Requires rows nonempty.
void write_results(std::span<const ResultRow> rows, const std::string& path, ResultFormat format);
/// Format chosen by content (JSON starts with '[').
std::vector<ResultRow> read_results(const std::string& path);

}  // namespace sausage
