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

#include "qtraj/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "qtraj/error.hpp"

namespace qtraj {

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12f", v);
  return buf;
}

std::vector<CsvRow> csv_rows(const EnsembleStatistics& stats, StatisticsView view) {
  std::vector<CsvRow> rows;
  rows.reserve(stats.samples.size());
  for (const SampleStatistics& s : stats.samples) {
    if (view == StatisticsView::per_trajectory) {
      rows.push_back({s.time, s.mean_concurrence, s.std_error, s.trace_dist_oracle, s.n});
    } else {
      rows.push_back({s.time, s.recovered_concurrence, s.recovered_std_error,
                      s.recovered_trace_dist_oracle, s.n});
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<CsvRow>& rows) {
  out << kCsvHeader << '\n';
  for (const CsvRow& r : rows) {
    out << format_value(r.time) << ',' << format_value(r.mean_concurrence) << ','
        << format_value(r.std_error) << ',' << format_value(r.mean_trace_dist_oracle) << ',' << r.n
        << '\n';
  }
}

void write_csv(std::ostream& out, const EnsembleStatistics& stats, StatisticsView view) {
  write_csv(out, csv_rows(stats, view));
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing: " + std::strerror(errno));
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  out.close();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void emit_csv(const EnsembleStatistics& stats, const std::filesystem::path& path,
              StatisticsView view) {
  std::ostringstream os;
  write_csv(os, stats, view);
  write_text_file(path, os.str());
}

std::filesystem::path recovered_sibling(const std::filesystem::path& path) {
  std::filesystem::path out = path;
  out.replace_filename(path.stem().string() + "_recovered" + path.extension().string());
  return out;
}

namespace {

double parse_double(const std::string& field, std::string_view source, std::size_t line) {
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (field.empty() || *end != '\0') {
    throw IoError(std::string(source) + ":" + std::to_string(line) + ": bad number '" + field + "'");
  }
  return v;
}

}  // namespace

std::vector<CsvRow> parse_csv(std::istream& in, std::string_view source) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw IoError(std::string(source) + ": missing or unexpected CSV header");
  }
  std::vector<CsvRow> rows;
  std::size_t number = 1;
  while (std::getline(in, line)) {
    ++number;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() != 5) {
      throw IoError(std::string(source) + ":" + std::to_string(number) + ": expected 5 fields");
    }
    CsvRow r;
    r.time = parse_double(fields[0], source, number);
    r.mean_concurrence = parse_double(fields[1], source, number);
    r.std_error = parse_double(fields[2], source, number);
    r.mean_trace_dist_oracle = parse_double(fields[3], source, number);
    char* end = nullptr;
    r.n = std::strtoull(fields[4].c_str(), &end, 10);
    if (fields[4].empty() || *end != '\0') {
      throw IoError(std::string(source) + ":" + std::to_string(number) + ": bad count");
    }
    rows.push_back(r);
  }
  return rows;
}

std::vector<CsvRow> parse_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return parse_csv(in, path.string());
}

}  // namespace qtraj
