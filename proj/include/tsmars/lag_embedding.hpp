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

#include <span>
#include <vector>

#include "tsmars/series.hpp"

namespace tsmars {

/// Response vector plus lagged predictor columns over the valid sample
/// window. Row i holds response z_{p+i} and predictor column j holds
/// z_{p+i-j}, so rows() == series length - p.
class LagEmbedding {
 public:
  int max_lag() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::span<const double> response() const { return response_; }

  /// Predictor column for lag j, 1-based, contiguous over rows.
  std::span<const double> lag_column(int lag) const {
    return {columns_.data() + static_cast<std::size_t>(lag - 1) * rows_, rows_};
  }

  Month row_month(std::size_t i) const { return start_ + static_cast<int>(i); }
  Month start() const { return start_; }

  friend LagEmbedding embed_lags(const GrowthSeries& series, int p);

 private:
  int p_ = 0;
  std::size_t rows_ = 0;
  Month start_;
  std::vector<double> response_;
  std::vector<double> columns_;  // column-major, p columns of rows_ each
};

/// Builds the lag embedding. Requires 1 <= p < series length.
LagEmbedding embed_lags(const GrowthSeries& series, int p);

}  // namespace tsmars
