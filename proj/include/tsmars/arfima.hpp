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

#include <cstddef>
#include <span>
#include <vector>

#include "tsmars/series.hpp"

namespace tsmars::arfima {

/// Fractional differencing weights of (1-B)^d: pi_0 = 1 and
/// pi_k = pi_{k-1} * (k - 1 - d) / k. Returns pi_0..pi_L. Requires
/// 0 <= d <= 1.
std::vector<double> fracdiff_coeffs(double d, std::size_t truncation);

/// Applies (1-B)^d with an expanding window, out_t = sum_{k<=t} pi_k x_{t-k};
/// output has the input's length. d may be negative here, which inverts the
/// filter (coefficients of (1-B)^{-|d|}).
std::vector<double> apply_fracdiff(std::span<const double> x, double d);
std::vector<double> apply_fracdiff(const GrowthSeries& series, double d);

struct DEstimate {
  double d = 0.0;
  /// (d, objective) over the coarse grid, before refinement.
  std::vector<std::pair<double, double>> profile;
};

/// Estimates the fractional order of an ARFIMA(0, d, 0) by minimizing the
/// conditional sum of squares of the filtered series: grid on [0.01, 0.99]
/// with step 0.01, then golden-section refinement to 1e-4.
DEstimate estimate_d(const GrowthSeries& series, std::size_t min_length = 50);

struct ArfimaModel {
  int p = 0;
  int q = 0;
  double d = 0.0;
  std::vector<double> ar;  // w_t = sum ar_i w_{t-i} + e_t + sum ma_j e_{t-j}
  std::vector<double> ma;
  double sigma2 = 0.0;
  double css = 0.0;
  double aic = 0.0;
  std::size_t n = 0;

  /// The fractional order gives a stationary process iff d < 0.5.
  bool stationary() const { return d < 0.5; }
};

struct ArfimaGridRow {
  int p = 0;
  int q = 0;
  double d = 0.0;
  double css = 0.0;
  double aic = 0.0;
};

struct ArfimaGridResult {
  ArfimaModel best;
  std::vector<ArfimaGridRow> table;
};

/// Fits ARFIMA(p, d, q) for every p <= p_max, q <= q_max (each at most 3):
/// d is searched on the estimate_d schedule with the ARMA coefficients
/// re-estimated by conditional sum of squares at every d. AIC is
/// n ln(css/n) + 2(p + q + 1); best is the minimum-AIC cell.
ArfimaGridResult fit_arfima_grid(const GrowthSeries& series, int p_max,
                                 int q_max);

/// ARMA residual recursion for an already fractionally differenced series;
/// returns e_t for t = p..n-1 (earlier shocks set to zero).
std::vector<double> arma_residuals(std::span<const double> w,
                                   std::span<const double> ar,
                                   std::span<const double> ma);

struct SubsetArModel {
  std::vector<int> lags;
  std::vector<double> coefficients;
  bool has_intercept = false;
  double intercept = 0.0;
  std::vector<double> residuals;
  double rss = 0.0;
  std::size_t n = 0;  // rows in the fit
};

/// Least-squares AR on an explicit lag set. Collinear lag columns raise a
/// NumericError naming the offending lags.
SubsetArModel fit_subset_ar(const GrowthSeries& series, std::span<const int> lags,
                            bool include_intercept = false);

/// Fitted values of a subset AR over an embedding (for residual diagnostics).
std::vector<double> predict_subset_ar(const SubsetArModel& model,
                                      const GrowthSeries& series);

}  // namespace tsmars::arfima
