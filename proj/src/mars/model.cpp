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

#include <algorithm>
#include <string>
#include <vector>

#include "tsmars/errors.hpp"
#include "tsmars/kernels.hpp"
#include "tsmars/mars.hpp"

namespace tsmars::mars {

double eval_hinge(const HingeFactor& factor, double x) {
  const double v = factor.sign > 0 ? x - factor.knot : factor.knot - x;
  return v > 0.0 ? v : 0.0;
}

double gcv_score(double rss, std::size_t n, std::size_t n_basis,
                 double gcv_penalty) {
  if (n == 0) throw NumericError("gcv: empty sample");
  const double nn = static_cast<double>(n);
  const double c = static_cast<double>(n_basis) +
                   gcv_penalty * (static_cast<double>(n_basis) - 1.0);
  if (c >= nn) {
    throw NumericError("gcv: effective parameters " + std::to_string(c) +
                       " >= sample size " + std::to_string(n));
  }
  const double denom = 1.0 - c / nn;
  return (rss / nn) / (denom * denom);
}

/// Basis column of one term over the embedding rows.
std::vector<double> term_column(const BasisTerm& term, const LagEmbedding& emb) {
  const std::size_t n = emb.rows();
  std::vector<double> col(n, 1.0);
  std::vector<double> hinge(n);
  for (const auto& f : term.factors) {
    const auto x = emb.lag_column(f.lag);
    if (f.sign > 0) {
      kernels::hinge_pos(x.data(), f.knot, hinge.data(), n);
    } else {
      kernels::hinge_neg(x.data(), f.knot, hinge.data(), n);
    }
    kernels::mul(col.data(), hinge.data(), col.data(), n);
  }
  return col;
}

std::vector<double> predict(const MarsModel& model, const LagEmbedding& emb) {
  int max_lag = 0;
  for (const auto& t : model.terms) {
    for (const auto& f : t.factors) max_lag = std::max(max_lag, f.lag);
  }
  if (emb.max_lag() < std::max(max_lag, 0)) {
    throw DataError("predict: embedding has " + std::to_string(emb.max_lag()) +
                    " lags but the model references lag " +
                    std::to_string(max_lag));
  }
  std::vector<double> out(emb.rows(), model.intercept);
  for (const auto& t : model.terms) {
    const auto col = term_column(t, emb);
    kernels::axpy(t.coefficient, col.data(), out.data(), emb.rows());
  }
  return out;
}

}  // namespace tsmars::mars
