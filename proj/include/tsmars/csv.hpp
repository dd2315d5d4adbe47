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

#pragma once

#include <filesystem>
#include <string>

#include "tsmars/series.hpp"

namespace tsmars {

/// Column mapping for CSV input/output. A header row is required; dates use
/// the "YYYY-MM" format.
struct CsvConfig {
  std::string date_column = "date";
  std::string value_column = "value";
  int period = 12;
};

/// Loads a monthly series. Rows are sorted by month; duplicate months and
/// gaps are rejected with the offending month named. Errors carry 1-based
/// file line numbers.
TimeSeries load_series_csv(const std::filesystem::path& path,
                           const CsvConfig& config = {});

/// Same parsing rules, for an already-transformed growth series.
GrowthSeries load_growth_csv(const std::filesystem::path& path,
                             const CsvConfig& config = {});

void save_growth_csv(const std::filesystem::path& path,
                     const GrowthSeries& series, const CsvConfig& config = {});

/// Writes date,value(,unstable) rows; the extra column flags unstable ratios.
void save_naive_csv(const std::filesystem::path& path,
                    const NaiveGrowthSeries& series,
                    const CsvConfig& config = {});

/// Writes arbitrary monthly values (simulator output, filtered series).
void save_values_csv(const std::filesystem::path& path, Month start,
                     std::span<const double> values,
                     const CsvConfig& config = {});

}  // namespace tsmars
