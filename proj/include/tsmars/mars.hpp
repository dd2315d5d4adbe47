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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tsmars/lag_embedding.hpp"

namespace tsmars::mars {

/// One truncated linear spline factor: sign +1 activates above the knot,
/// sign -1 below it.
struct HingeFactor {
  int sign = +1;   // +1 or -1
  int lag = 1;     // predictor index, 1-based
  double knot = 0.0;
};

/// sign +1: max(x - knot, 0); sign -1: max(knot - x, 0).
double eval_hinge(const HingeFactor& factor, double x);

/// Product of one to k_max hinge factors, weighted by `coefficient`. Factors
/// within a term never share a lag; the degree is the interaction order.
struct BasisTerm {
  std::vector<HingeFactor> factors;
  double coefficient = 0.0;

  int degree() const { return static_cast<int>(factors.size()); }
};

struct MarsModel {
  double intercept = 0.0;
  std::vector<BasisTerm> terms;
  int p = 0;               // max lag available when fitted
  int k_max = 1;           // interaction limit used
  double gcv_penalty = 3.0;
  double rss = 0.0;
  double gcv = 0.0;
  std::size_t n = 0;       // training rows
};

struct MarsConfig {
  int k_max = 1;
  int basis_limit = 0;         // 0 selects "equal to p"
  double gcv_penalty = 3.0;
  bool allow_high_degree = false;  // permit k_max > 3
};

/// Generalized cross-validation score (rss/n) / (1 - C/n)^2 with effective
/// parameter count C = n_basis + penalty * (n_basis - 1); n_basis includes
/// the constant. Throws NumericError when C >= n.
double gcv_score(double rss, std::size_t n, std::size_t n_basis,
                 double gcv_penalty);

/// Fitted values over the embedding rows. The embedding must provide at
/// least the lags the model references.
std::vector<double> predict(const MarsModel& model, const LagEmbedding& emb);

/// The basis column of one term over the embedding rows (product of its
/// hinge factors, no coefficient).
std::vector<double> term_column(const BasisTerm& term, const LagEmbedding& emb);

/// Per-step history of the forward pass, for monotonicity checks.
struct ForwardTrace {
  std::vector<double> rss_by_step;  // entry 0 is the intercept-only fit
  std::vector<double> gcv_by_step;
};

/// Greedy forward selection: starting from the constant basis, repeatedly
/// adds the reflected hinge pair (parent x new factor) with the lowest GCV
/// over all (parent, lag, knot) candidates, each candidate orthogonalized
/// against the accepted set before scoring. Stops at the basis limit or when
/// no candidate lowers the GCV. Ties within 1e-12 relative GCV prefer the
/// lower lag, then the lower knot, then the earlier parent.
MarsModel forward_pass(const LagEmbedding& emb, const MarsConfig& config,
                       ForwardTrace* trace = nullptr);

/// Backward pruning: repeatedly deletes the non-constant term whose removal
/// gives the lowest GCV (refitting after each deletion) and returns the best
/// model seen, which may be the unpruned one. Ties prefer the smaller model.
MarsModel prune_backward(const MarsModel& model, const LagEmbedding& emb);

struct FitRow {
  int p = 0;
  int k_max = 0;
  bool skipped = false;
  double rss = 0.0;
  double gcv = 0.0;
  int n_linear = 0;
  int n_nonlinear = 0;
  double pct_constant = 0.0;
  double pct_linear = 0.0;
  double pct_nonlinear = 0.0;
  double pct_residual = 0.0;
};

struct FitReport {
  std::vector<FitRow> rows;
  std::size_t best_index = 0;
};

struct GridResult {
  MarsModel best;
  FitReport report;
};

/// Runs forward + backward per (p, k_max) pair. Pairs the series is too
/// short for are reported as skipped. Best is the minimum-GCV row.
GridResult fit_grid(const GrowthSeries& series, std::span<const int> lags,
                    std::span<const int> k_values, const MarsConfig& base);

/// Renders the model as a readable equation in terms of z[t-j].
std::string format_equation(const MarsModel& model);

/// Same, but degree-1 terms whose hinge spans the whole observed range of
/// their lag are folded into plain linear terms (with the intercept
/// adjusted), matching how such models are conventionally written.
std::string format_equation(const MarsModel& model, const LagEmbedding& emb);

}  // namespace tsmars::mars
