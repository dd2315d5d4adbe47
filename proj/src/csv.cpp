// Copyright 2026-present the tsmars project
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

#include "tsmars/csv.hpp"

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

#include "tsmars/errors.hpp"

namespace tsmars {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

std::string strip(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct RawRows {
  std::vector<std::pair<Month, double>> rows;
};

RawRows read_rows(const std::filesystem::path& path, const CsvConfig& config) {
  std::ifstream in(path);
  if (!in) throw DataError("csv: cannot open " + path.string());

  std::string line;
  if (!std::getline(in, line)) throw DataError("csv: empty input in " + path.string());

  const auto header = split_fields(line);
  int date_idx = -1;
  int value_idx = -1;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const auto name = strip(header[i]);
    if (name == config.date_column) date_idx = static_cast<int>(i);
    if (name == config.value_column) value_idx = static_cast<int>(i);
  }
  if (date_idx < 0 || value_idx < 0) {
    throw DataError("csv: header must contain columns '" + config.date_column +
                    "' and '" + config.value_column + "' in " + path.string());
  }

  RawRows out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (strip(line).empty()) continue;
    const auto fields = split_fields(line);
    const auto need = static_cast<std::size_t>(std::max(date_idx, value_idx)) + 1;
    if (fields.size() < need) {
      throw DataError("csv: row " + std::to_string(line_no) + ": expected at least " +
                      std::to_string(need) + " fields, got " +
                      std::to_string(fields.size()));
    }
    const auto date_text = strip(fields[static_cast<std::size_t>(date_idx)]);
    const auto month = Month::parse(date_text);
    if (!month) {
      throw DataError("csv: row " + std::to_string(line_no) + ": unparseable date '" +
                      date_text + "'");
    }
    const auto value_text = strip(fields[static_cast<std::size_t>(value_idx)]);
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(value_text.c_str(), &end);
    if (value_text.empty() || end != value_text.c_str() + value_text.size() || errno != 0) {
      throw DataError("csv: row " + std::to_string(line_no) + ": unparseable value '" +
                      value_text + "'");
    }
    out.rows.emplace_back(*month, value);
  }
  if (out.rows.empty()) throw DataError("csv: no data rows in " + path.string());

  std::sort(out.rows.begin(), out.rows.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    const Month prev = out.rows[i - 1].first;
    const Month cur = out.rows[i].first;
    if (cur == prev) throw DataError("csv: duplicate month " + cur.str());
    if (cur - prev != 1) {
      throw DataError("csv: gap in series, missing " + (prev + 1).str());
    }
  }
  return out;
}

std::vector<double> values_of(const RawRows& raw) {
  std::vector<double> v;
  v.reserve(raw.rows.size());
  for (const auto& [m, x] : raw.rows) v.push_back(x);
  return v;
}

void write_line(std::FILE* f, Month m, double v) {
  std::fprintf(f, "%s,%.17g\n", m.str().c_str(), v);
}

struct FileCloser {
  void operator()(std::FILE* f) const { if (f) std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_for_write(const std::filesystem::path& path) {
  FilePtr f(std::fopen(path.c_str(), "w"));
  if (!f) throw DataError("csv: cannot write " + path.string());
  return f;
}

}  // namespace

TimeSeries load_series_csv(const std::filesystem::path& path,
                           const CsvConfig& config) {
  auto raw = read_rows(path, config);
  return TimeSeries(raw.rows.front().first, values_of(raw), config.period);
}

GrowthSeries load_growth_csv(const std::filesystem::path& path,
                             const CsvConfig& config) {
  auto raw = read_rows(path, config);
  return GrowthSeries(raw.rows.front().first, values_of(raw));
}

void save_growth_csv(const std::filesystem::path& path,
                     const GrowthSeries& series, const CsvConfig& config) {
  auto f = open_for_write(path);
  std::fprintf(f.get(), "%s,%s\n", config.date_column.c_str(),
               config.value_column.c_str());
  for (std::size_t i = 0; i < series.size(); ++i) {
    write_line(f.get(), series.month_at(i), series[i]);
  }
}

void save_naive_csv(const std::filesystem::path& path,
                    const NaiveGrowthSeries& series, const CsvConfig& config) {
  auto f = open_for_write(path);
  std::fprintf(f.get(), "%s,%s,unstable\n", config.date_column.c_str(),
               config.value_column.c_str());
  for (std::size_t i = 0; i < series.values.size(); ++i) {
    std::fprintf(f.get(), "%s,%.17g,%d\n", series.month_at(i).str().c_str(),
                 series.values[i], static_cast<int>(series.unstable[i]));
  }
}

void save_values_csv(const std::filesystem::path& path, Month start,
                     std::span<const double> values, const CsvConfig& config) {
  auto f = open_for_write(path);
  std::fprintf(f.get(), "%s,%s\n", config.date_column.c_str(),
               config.value_column.c_str());
  for (std::size_t i = 0; i < values.size(); ++i) {
    write_line(f.get(), start + static_cast<int>(i), values[i]);
  }
}

}  // namespace tsmars
