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

#include <cmath>
#include <limits>
#include <vector>

#include "tsmars/kernels.hpp"
#include "tsmars/linalg.hpp"
#include "tsmars/mars.hpp"

namespace tsmars::mars {

namespace {

struct SubsetFit {
  double rss = 0.0;
  double gcv = 0.0;
  double intercept = 0.0;
  std::vector<double> coefficients;  // per active term
};

SubsetFit fit_subset(const std::vector<std::vector<double>>& term_cols,
                     const std::vector<std::size_t>& active,
                     std::span<const double> y, const std::vector<double>& ones,
                     double penalty) {
  std::vector<std::span<const double>> cols;
  cols.reserve(active.size() + 1);
  cols.emplace_back(ones.data(), ones.size());
  for (std::size_t t : active) cols.emplace_back(term_cols[t].data(), y.size());
  const auto ls = linalg::solve_least_squares(cols, y);
  SubsetFit fit;
  fit.rss = ls.rss;
  fit.gcv = gcv_score(ls.rss, y.size(), 1 + active.size(), penalty);
  fit.intercept = ls.coefficients[0];
  fit.coefficients.assign(ls.coefficients.begin() + 1, ls.coefficients.end());
  return fit;
}

MarsModel make_model(const MarsModel& base, const std::vector<std::size_t>& active,
                     const SubsetFit& fit) {
  MarsModel out;
  out.p = base.p;
  out.k_max = base.k_max;
  out.gcv_penalty = base.gcv_penalty;
  out.n = base.n;
  out.intercept = fit.intercept;
  out.rss = fit.rss;
  out.gcv = fit.gcv;
  out.terms.reserve(active.size());
  for (std::size_t i = 0; i < active.size(); ++i) {
    BasisTerm term = base.terms[active[i]];
    term.coefficient = fit.coefficients[i];
    out.terms.push_back(std::move(term));
  }
  return out;
}

}  // namespace

MarsModel prune_backward(const MarsModel& model, const LagEmbedding& emb) {
  const auto y = emb.response();
  const std::vector<double> ones(emb.rows(), 1.0);

  std::vector<std::vector<double>> term_cols;
  term_cols.reserve(model.terms.size());
  for (const auto& term : model.terms) term_cols.push_back(term_column(term, emb));

  std::vector<std::size_t> active(model.terms.size());
  for (std::size_t i = 0; i < active.size(); ++i) active[i] = i;

  SubsetFit current = fit_subset(term_cols, active, y, ones, model.gcv_penalty);
  std::vector<std::size_t> best_active = active;
  SubsetFit best = current;

  while (!active.empty()) {
    double step_gcv = std::numeric_limits<double>::infinity();
    std::size_t remove_pos = 0;
    SubsetFit step_fit;
    std::vector<std::size_t> reduced;
    for (std::size_t pos = 0; pos < active.size(); ++pos) {
      reduced = active;
      reduced.erase(reduced.begin() + static_cast<std::ptrdiff_t>(pos));
      const SubsetFit fit = fit_subset(term_cols, reduced, y, ones, model.gcv_penalty);
      // Ties prefer dropping the later-added term.
      if (fit.gcv < step_gcv ||
          (fit.gcv == step_gcv && active[pos] > active[remove_pos])) {
        step_gcv = fit.gcv;
        remove_pos = pos;
        step_fit = fit;
      }
    }
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(remove_pos));
    current = step_fit;
    // "<=" so that an equally good smaller model wins.
    if (current.gcv <= best.gcv) {
      best = current;
      best_active = active;
    }
  }

  return make_model(model, best_active, best);
}

}  // namespace tsmars::mars
