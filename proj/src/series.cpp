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

#include "tsmars/series.hpp"

#include <cmath>
#include <cstdlib>

#include "tsmars/errors.hpp"

namespace tsmars {

namespace {

// Slack on the [-1, 1] bound; the transform is exact in real arithmetic but
// the final division can round one ulp past 1.
constexpr double kBoundSlack = 1e-9;

void require_finite(const std::vector<double>& values, const char* what) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw DataError(std::string(what) + ": non-finite value at index " +
                      std::to_string(i));
    }
  }
}

}  // namespace

TimeSeries::TimeSeries(Month start, std::vector<double> values, int period)
    : start_(start), values_(std::move(values)), period_(period) {
  if (values_.empty()) throw DataError("time series: empty input");
  if (period_ < 1) throw DataError("time series: period must be >= 1");
  require_finite(values_, "time series");
}

GrowthSeries::GrowthSeries(Month start, std::vector<double> values)
    : start_(start), values_(std::move(values)) {
  if (values_.empty()) throw DataError("growth series: empty input");
  require_finite(values_, "growth series");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (std::abs(values_[i]) > 1.0 + kBoundSlack) {
      throw DataError("growth series: value " + std::to_string(values_[i]) +
                      " at " + month_at(i).str() + " outside [-1, 1]");
    }
  }
}

GrowthSeries symmetric_growth(const TimeSeries& series) {
  const int lag = series.period();
  if (series.size() <= static_cast<std::size_t>(lag)) {
    throw DataError("symmetric growth: series shorter than one period");
  }
  std::vector<double> z(series.size() - lag);
  for (std::size_t t = 0; t < z.size(); ++t) {
    const double cur = series[t + lag];
    const double prev = series[t];
    const double denom = std::abs(cur) + std::abs(prev);
    if (denom == 0.0) {
      throw DataError("symmetric growth: zero denominator at " +
                      series.month_at(t + lag).str());
    }
    z[t] = (cur - prev) / denom;
  }
  return GrowthSeries(series.start() + lag, std::move(z));
}

NaiveGrowthSeries naive_growth(const TimeSeries& series, double epsilon) {
  const int lag = series.period();
  if (series.size() <= static_cast<std::size_t>(lag)) {
    throw DataError("naive growth: series shorter than one period");
  }
  if (epsilon < 0.0) {
    double mean_abs = 0.0;
    for (double v : series.values()) mean_abs += std::abs(v);
    mean_abs /= static_cast<double>(series.size());
    epsilon = 1e-9 * mean_abs;
  }
  NaiveGrowthSeries out;
  out.start = series.start() + lag;
  out.values.resize(series.size() - lag);
  out.unstable.resize(out.values.size(), 0);
  for (std::size_t t = 0; t < out.values.size(); ++t) {
    const double prev = series[t];
    out.values[t] = (series[t + lag] - prev) / prev;
    if (std::abs(prev) <= epsilon) out.unstable[t] = 1;
    if (!std::isfinite(out.values[t])) {
      throw DataError("naive growth: zero denominator at " +
                      series.month_at(t + lag).str());
    }
  }
  return out;
}

std::pair<GrowthSeries, GrowthSeries> split_at(const GrowthSeries& series,
                                               Month boundary) {
  if (boundary <= series.start() || boundary > series.last()) {
    throw DataError("split: boundary " + boundary.str() +
                    " not inside series span " + series.start().str() + ".." +
                    series.last().str());
  }
  const auto cut = static_cast<std::size_t>(boundary - series.start());
  std::vector<double> left(series.values().begin(),
                           series.values().begin() + cut);
  std::vector<double> right(series.values().begin() + cut,
                            series.values().end());
  return {GrowthSeries(series.start(), std::move(left)),
          GrowthSeries(boundary, std::move(right))};
}

}  // namespace tsmars
