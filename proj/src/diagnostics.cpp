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

#include "tsmars/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tsmars/errors.hpp"
#include "tsmars/kernels.hpp"
#include "tsmars/special.hpp"

namespace tsmars::diag {

AcfResult acf(std::span<const double> x, int max_lag) {
  const std::size_t n = x.size();
  if (max_lag < 1) throw DataError("acf: max_lag must be >= 1");
  if (n <= static_cast<std::size_t>(max_lag)) {
    throw DataError("acf: series length " + std::to_string(n) +
                    " must exceed max_lag " + std::to_string(max_lag));
  }
  const double mean = kernels::sum(x.data(), n) / static_cast<double>(n);
  std::vector<double> centered(n);
  for (std::size_t i = 0; i < n; ++i) centered[i] = x[i] - mean;
  const double denom = kernels::dot(centered.data(), centered.data(), n);
  if (!(denom > 0.0)) throw DataError("acf: constant series");

  AcfResult out;
  out.n = n;
  out.max_lag = max_lag;
  out.se_band = 2.0 / std::sqrt(static_cast<double>(n));
  out.r.resize(static_cast<std::size_t>(max_lag));
  for (int k = 1; k <= max_lag; ++k) {
    const double num =
        kernels::dot(centered.data() + k, centered.data(), n - static_cast<std::size_t>(k));
    out.r[static_cast<std::size_t>(k - 1)] = num / denom;
  }
  return out;
}

std::vector<double> bartlett_bands(const AcfResult& result) {
  std::vector<double> bands(result.r.size());
  double cum = 0.0;
  for (std::size_t k = 0; k < result.r.size(); ++k) {
    bands[k] = 2.0 * std::sqrt((1.0 + 2.0 * cum) / static_cast<double>(result.n));
    cum += result.r[k] * result.r[k];
  }
  return bands;
}

double ljung_box_q(std::span<const double> r, std::size_t n, int max_lag) {
  if (r.size() < static_cast<std::size_t>(max_lag)) {
    throw DataError("ljung-box: need autocorrelations up to the requested lag");
  }
  const double nn = static_cast<double>(n);
  double acc = 0.0;
  for (int k = 1; k <= max_lag; ++k) {
    const double rk = r[static_cast<std::size_t>(k - 1)];
    acc += rk * rk / (nn - static_cast<double>(k));
  }
  return nn * (nn + 2.0) * acc;
}

std::vector<LjungBoxRow> ljung_box(std::span<const double> residuals,
                                   std::span<const int> lags,
                                   int fitted_params) {
  if (lags.empty()) throw DataError("ljung-box: empty lag list");
  const int max_lag = *std::max_element(lags.begin(), lags.end());
  const auto r = acf(residuals, max_lag);

  std::vector<LjungBoxRow> rows;
  rows.reserve(lags.size());
  for (int lag : lags) {
    LjungBoxRow row;
    row.lag = lag;
    row.q_stat = ljung_box_q(r.r, r.n, lag);
    row.df = fitted_params > 0 ? lag - fitted_params : lag;
    if (row.df < 1) {
      throw DataError("ljung-box: corrected df < 1 at lag " + std::to_string(lag));
    }
    row.p_value = special::chi_square_sf(row.q_stat, row.df);
    for (int j = 0; j < 6; ++j) {
      const int src = lag - 5 + j;
      row.recent_r[static_cast<std::size_t>(j)] = src >= 1 ? r.at(src) : 0.0;
    }
    rows.push_back(row);
  }
  return rows;
}

NormalityResult normality_test(std::span<const double> residuals) {
  const std::size_t n = residuals.size();
  if (n < 20) throw DataError("normality: need at least 20 residuals");
  const double nn = static_cast<double>(n);
  const double mean = kernels::sum(residuals.data(), n) / nn;
  double m2 = 0.0;
  double m3 = 0.0;
  double m4 = 0.0;
  for (double v : residuals) {
    const double c = v - mean;
    const double c2 = c * c;
    m2 += c2;
    m3 += c2 * c;
    m4 += c2 * c2;
  }
  m2 /= nn;
  m3 /= nn;
  m4 /= nn;
  if (!(m2 > 0.0)) throw DataError("normality: zero variance");

  NormalityResult out;
  out.skewness = m3 / std::pow(m2, 1.5);
  out.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  out.statistic = nn * (out.skewness * out.skewness / 6.0 +
                        out.excess_kurtosis * out.excess_kurtosis / 24.0);
  out.p_value = special::chi_square_sf(out.statistic, 2);
  return out;
}

HeteroResult hetero_check(std::span<const double> residuals, int max_lag,
                          std::span<const int> lb_lags) {
  std::vector<double> squared(residuals.size());
  kernels::mul(residuals.data(), residuals.data(), squared.data(), residuals.size());
  HeteroResult out;
  out.acf = acf(squared, max_lag);
  out.rows = ljung_box(squared, lb_lags);
  return out;
}

}  // namespace tsmars::diag
