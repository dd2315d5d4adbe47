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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace tsmars::diag {

/// Sample autocorrelations r_1..r_max_lag with the flat two-standard-error
/// band 2/sqrt(n). r_0 is identically 1 and not included.
struct AcfResult {
  std::vector<double> r;
  double se_band = 0.0;
  std::size_t n = 0;
  int max_lag = 0;

  double at(int lag) const { return r[static_cast<std::size_t>(lag - 1)]; }
};

AcfResult acf(std::span<const double> x, int max_lag);

/// Bartlett lag-dependent bands 2 * sqrt((1 + 2 sum_{j<k} r_j^2) / n), one
/// per lag, for plots that prefer them over the flat limit.
std::vector<double> bartlett_bands(const AcfResult& result);

struct LjungBoxRow {
  int lag = 0;
  double q_stat = 0.0;
  int df = 0;
  double p_value = 0.0;
  std::array<double, 6> recent_r{};  // autocorrelations at lag-5..lag
};

/// Q(L) = n (n+2) sum_{k=1..L} r_k^2 / (n-k) from precomputed
/// autocorrelations.
double ljung_box_q(std::span<const double> r, std::size_t n, int max_lag);

/// Portmanteau rows at the requested lag checkpoints. By default the
/// degrees of freedom equal the lag; a positive `fitted_params` switches to
/// the corrected df = lag - fitted_params (rows where that is < 1 are
/// rejected).
std::vector<LjungBoxRow> ljung_box(std::span<const double> residuals,
                                   std::span<const int> lags,
                                   int fitted_params = 0);

struct NormalityResult {
  double statistic = 0.0;
  double p_value = 0.0;
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
};

/// Jarque-Bera test: n (S^2/6 + K^2/24) against chi-square with 2 df.
NormalityResult normality_test(std::span<const double> residuals);

struct HeteroResult {
  AcfResult acf;
  std::vector<LjungBoxRow> rows;
};

/// Heteroscedasticity screen: the ACF and Ljung-Box rows of the centered
/// squared residuals.
HeteroResult hetero_check(std::span<const double> residuals, int max_lag,
                          std::span<const int> lb_lags);

}  // namespace tsmars::diag
