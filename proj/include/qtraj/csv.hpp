// Copyright 2026 The qtraj Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qtraj/runner.hpp"

namespace qtraj {

inline constexpr std::string_view kCsvHeader = "time,mean_concurrence,stderr,mean_trace_dist_oracle,n";

struct CsvRow {
  double time = 0.0;
  double mean_concurrence = 0.0;
  double std_error = 0.0;
  double mean_trace_dist_oracle = 0.0;
  std::uint64_t n = 0;
};

std::vector<CsvRow> csv_rows(const EnsembleStatistics& stats, StatisticsView view);

/// Twelve decimals per value.
void write_csv(std::ostream& out, const std::vector<CsvRow>& rows);
void write_csv(std::ostream& out, const EnsembleStatistics& stats, StatisticsView view);

/// Throws IoError naming the path.
void emit_csv(const EnsembleStatistics& stats, const std::filesystem::path& path,
              StatisticsView view = StatisticsView::per_trajectory);

/// "<stem>_recovered<ext>" next to `path`.
std::filesystem::path recovered_sibling(const std::filesystem::path& path);

/// Reads a file written by emit_csv. Throws IoError on I/O or format errors.
std::vector<CsvRow> parse_csv(const std::filesystem::path& path);
std::vector<CsvRow> parse_csv(std::istream& in, std::string_view source);

/// Writes `text` to `path`, replacing it. Throws IoError naming the path.
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Formats with %.12f.
std::string format_value(double v);

}  // namespace qtraj
