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

#include "tsmars/anova.hpp"

#include <algorithm>
#include <vector>

#include "tsmars/errors.hpp"
#include "tsmars/kernels.hpp"
#include "tsmars/linalg.hpp"

namespace tsmars::anova {

TermClass classify_term(const mars::BasisTerm& term, const LagEmbedding& emb) {
  if (term.factors.empty()) return TermClass::constant;
  if (term.degree() >= 2) return TermClass::nonlinear;
  const auto& f = term.factors.front();
  const auto col = emb.lag_column(f.lag);
  const auto [lo, hi] = std::minmax_element(col.begin(), col.end());
  const bool spans_range = f.sign > 0 ? f.knot <= *lo : f.knot >= *hi;
  return spans_range ? TermClass::linear : TermClass::nonlinear;
}

AnovaDecomposition decompose(const mars::MarsModel& model,
                             const LagEmbedding& emb) {
  const auto y = emb.response();
  const std::size_t n = emb.rows();

  // Collect term columns into the canonical block order.
  std::vector<std::vector<double>> linear_cols, spline_cols, interaction_cols;
  AnovaDecomposition out;
  for (const auto& term : model.terms) {
    auto col = mars::term_column(term, emb);
    switch (classify_term(term, emb)) {
      case TermClass::linear:
        ++out.n_linear_terms;
        linear_cols.push_back(std::move(col));
        break;
      case TermClass::nonlinear:
        ++out.n_nonlinear_terms;
        if (term.degree() == 1) {
          spline_cols.push_back(std::move(col));
        } else {
          interaction_cols.push_back(std::move(col));
        }
        break;
      case TermClass::constant:
        break;  // terms never carry an empty factor list
    }
  }

  linalg::OrthoBasis basis(n);
  std::vector<double> projection(n, 0.0);
  auto explained_by = [&](std::span<const std::vector<double>> block) {
    double ss = 0.0;
    for (const auto& col : block) {
      if (!basis.push(col)) continue;
      const auto q = basis.column(basis.size() - 1);
      const double g = kernels::dot(q.data(), y.data(), n);
      kernels::axpy(g, q.data(), projection.data(), n);
      ss += g * g;
    }
    return ss;
  };

  const std::vector<double> ones(n, 1.0);
  const std::vector<std::vector<double>> const_block{ones};
  out.ss_total = kernels::dot(y.data(), y.data(), n);
  out.ss_constant = explained_by(const_block);
  out.ss_linear = explained_by(linear_cols);
  out.ss_linear_spline = explained_by(spline_cols);
  const double ss_interaction = explained_by(interaction_cols);
  out.ss_nonlinear = out.ss_linear_spline + ss_interaction;

  // Residual from the projection itself, so the partition identity is a
  // genuine two-route check rather than a bookkeeping tautology.
  std::vector<double> resid(n);
  for (std::size_t i = 0; i < n; ++i) resid[i] = y[i] - projection[i];
  out.ss_residual = kernels::dot(resid.data(), resid.data(), n);

  if (out.ss_total > 0.0) {
    const double scale = 100.0 / out.ss_total;
    out.pct_constant = out.ss_constant * scale;
    out.pct_linear = out.ss_linear * scale;
    out.pct_nonlinear = out.ss_nonlinear * scale;
    out.pct_residual = out.ss_residual * scale;
    out.pct_nonlinearity = out.pct_nonlinear;
  }
  return out;
}

double pct_nonlinearity(const AnovaDecomposition& decomposition) {
  if (!(decomposition.ss_total > 0.0)) {
    throw NumericError("anova: zero total sum of squares");
  }
  return 100.0 * decomposition.ss_nonlinear / decomposition.ss_total;
}

}  // namespace tsmars::anova
