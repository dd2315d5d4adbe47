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

#include <limits>

#include "tsmars/anova.hpp"
#include "tsmars/errors.hpp"
#include "tsmars/mars.hpp"

namespace tsmars::mars {

GridResult fit_grid(const GrowthSeries& series, std::span<const int> lags,
                    std::span<const int> k_values, const MarsConfig& base) {
  if (lags.empty() || k_values.empty()) {
    throw DataError("mars grid: empty lag or interaction list");
  }

  GridResult result;
  double best_gcv = std::numeric_limits<double>::infinity();
  bool have_best = false;

  for (int p : lags) {
    for (int k : k_values) {
      FitRow row;
      row.p = p;
      row.k_max = k;
      if (series.size() <= static_cast<std::size_t>(p)) {
        row.skipped = true;
        result.report.rows.push_back(row);
        continue;
      }
      const auto emb = embed_lags(series, p);
      MarsConfig config = base;
      config.k_max = k;
      if (base.basis_limit <= 0) config.basis_limit = p;
      const MarsModel forward = forward_pass(emb, config);
      const MarsModel model = prune_backward(forward, emb);
      const auto decomp = anova::decompose(model, emb);

      row.rss = model.rss;
      row.gcv = model.gcv;
      row.n_linear = decomp.n_linear_terms;
      row.n_nonlinear = decomp.n_nonlinear_terms;
      row.pct_constant = decomp.pct_constant;
      row.pct_linear = decomp.pct_linear;
      row.pct_nonlinear = decomp.pct_nonlinear;
      row.pct_residual = decomp.pct_residual;
      result.report.rows.push_back(row);

      if (!have_best || model.gcv < best_gcv) {
        have_best = true;
        best_gcv = model.gcv;
        result.best = model;
        result.report.best_index = result.report.rows.size() - 1;
      }
    }
  }
  if (!have_best) {
    throw DataError("mars grid: series too short for every (p, k) pair");
  }
  return result;
}

}  // namespace tsmars::mars
