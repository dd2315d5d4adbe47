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

#include "tsmars/linalg.hpp"

#include <cmath>
#include <cstring>

#include "tsmars/kernels.hpp"

namespace tsmars::linalg {

bool OrthoBasis::push(std::span<const double> col) {
  scratch_.assign(col.begin(), col.end());
  double* v = scratch_.data();
  const double norm0 = kernels::dot(v, v, rows_);
  if (!(norm0 > 0.0)) return false;

  // Two MGS passes; the second mops up cancellation from the first.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < count_; ++j) {
      const double* q = data_.data() + j * rows_;
      const double r = kernels::dot(q, v, rows_);
      kernels::axpy(-r, q, v, rows_);
    }
  }
  const double norm2 = kernels::dot(v, v, rows_);
  if (norm2 <= kRankTol * norm0) return false;

  const double inv = 1.0 / std::sqrt(norm2);
  data_.resize((count_ + 1) * rows_);
  double* dst = data_.data() + count_ * rows_;
  for (std::size_t i = 0; i < rows_; ++i) dst[i] = v[i] * inv;
  ++count_;
  return true;
}

LeastSquares solve_least_squares(std::span<const std::span<const double>> columns,
                                 std::span<const double> y) {
  const std::size_t n = y.size();
  const std::size_t k = columns.size();

  LeastSquares out;
  out.coefficients.assign(k, 0.0);
  out.fitted.assign(n, 0.0);

  std::vector<double> qdata;                 // orthonormal columns, col-major
  std::vector<std::size_t> kept;             // original index per Q column
  std::vector<std::vector<double>> r_rows;   // r_rows[j][t] = R[j][j+t]
  std::vector<double> work(n);

  for (std::size_t c = 0; c < k; ++c) {
    std::memcpy(work.data(), columns[c].data(), n * sizeof(double));
    double* v = work.data();
    const double norm0 = kernels::dot(v, v, n);
    std::vector<double> r_col(kept.size(), 0.0);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t j = 0; j < kept.size(); ++j) {
        const double* q = qdata.data() + j * n;
        const double r = kernels::dot(q, v, n);
        kernels::axpy(-r, q, v, n);
        r_col[j] += r;
      }
    }
    const double norm2 = kernels::dot(v, v, n);
    if (!(norm0 > 0.0) || norm2 <= kRankTol * norm0) {
      out.dropped.push_back(c);
      continue;
    }
    const double diag = std::sqrt(norm2);
    for (std::size_t j = 0; j < r_col.size(); ++j) r_rows[j].push_back(r_col[j]);
    r_rows.emplace_back().push_back(diag);
    const double inv = 1.0 / diag;
    qdata.resize((kept.size() + 1) * n);
    double* dst = qdata.data() + kept.size() * n;
    for (std::size_t i = 0; i < n; ++i) dst[i] = v[i] * inv;
    kept.push_back(c);
  }

  const std::size_t m = kept.size();
  std::vector<double> gamma(m);
  for (std::size_t j = 0; j < m; ++j) {
    gamma[j] = kernels::dot(qdata.data() + j * n, y.data(), n);
    kernels::axpy(gamma[j], qdata.data() + j * n, out.fitted.data(), n);
  }

  // Back-substitute R beta = gamma.
  std::vector<double> beta(m, 0.0);
  for (std::size_t jj = m; jj-- > 0;) {
    double s = gamma[jj];
    for (std::size_t t = jj + 1; t < m; ++t) s -= r_rows[jj][t - jj] * beta[t];
    beta[jj] = s / r_rows[jj][0];
  }
  for (std::size_t j = 0; j < m; ++j) out.coefficients[kept[j]] = beta[j];

  out.residuals.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.residuals[i] = y[i] - out.fitted[i];
  out.rss = kernels::dot(out.residuals.data(), out.residuals.data(), n);
  return out;
}

}  // namespace tsmars::linalg
