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

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "tsmars/month.hpp"

namespace tsmars {

/// Raw monthly observations y_t. Immutable after construction; months are
/// consecutive starting at `start()`.
class TimeSeries {
 public:
  /// Validates: non-empty, all values finite, period >= 1.
  TimeSeries(Month start, std::vector<double> values, int period = 12);

  Month start() const { return start_; }
  Month month_at(std::size_t i) const { return start_ + static_cast<int>(i); }
  Month last() const { return month_at(values_.size() - 1); }
  int period() const { return period_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  Month start_;
  std::vector<double> values_;
  int period_;
};

/// Annual growth values z_t, dimensionless and bounded to [-1, 1].
class GrowthSeries {
 public:
  /// Validates: non-empty, finite, every value within [-1, 1] (a tiny
  /// rounding slack is tolerated).
  GrowthSeries(Month start, std::vector<double> values);

  Month start() const { return start_; }
  Month month_at(std::size_t i) const { return start_ + static_cast<int>(i); }
  Month last() const { return month_at(values_.size() - 1); }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  Month start_;
  std::vector<double> values_;
};

/// Plain annual growth ratios. Unlike GrowthSeries these are unbounded, and
/// each value carries an instability marker set when the denominator was
/// close to zero.
struct NaiveGrowthSeries {
  Month start;
  std::vector<double> values;
  std::vector<std::uint8_t> unstable;

  Month month_at(std::size_t i) const { return start + static_cast<int>(i); }
};

/// Symmetric annual growth z_t = (y_t - y_{t-period}) / (|y_t| + |y_{t-period}|).
/// The first `period` observations are consumed by the lag; output starts
/// `period` months after the input. Throws DataError when both terms of a
/// denominator are zero.
GrowthSeries symmetric_growth(const TimeSeries& series);

/// Plain annual growth (y_t - y_{t-period}) / y_{t-period}. Denominators with
/// magnitude below `epsilon` mark the value as unstable but still emit it.
/// A negative epsilon selects the default 1e-9 times the series mean
/// absolute value.
NaiveGrowthSeries naive_growth(const TimeSeries& series, double epsilon = -1.0);

/// Splits at a calendar month: left holds everything before `boundary`,
/// right holds `boundary` and after. Both halves must be non-empty.
std::pair<GrowthSeries, GrowthSeries> split_at(const GrowthSeries& series,
                                               Month boundary);

}  // namespace tsmars
