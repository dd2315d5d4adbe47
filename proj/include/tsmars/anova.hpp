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

#include "tsmars/mars.hpp"

namespace tsmars::anova {

enum class TermClass {
  constant,  // the intercept
  linear,    // degree 1 with the hinge active over the whole observed range
  nonlinear  // degree 1 with an interior knot, or any degree >= 2
};

/// Classifies by the observed range of the term's lag column: a degree-1
/// hinge whose knot sits at or beyond the sample boundary on its inactive
/// side is linear; everything else non-constant is nonlinear.
TermClass classify_term(const mars::BasisTerm& term, const LagEmbedding& emb);

/// Variance partition of the training response by basis-function class.
/// Sums of squares are about zero; the constant block absorbs the mean.
struct AnovaDecomposition {
  double ss_total = 0.0;
  double ss_constant = 0.0;
  double ss_linear = 0.0;
  double ss_nonlinear = 0.0;      // linear-spline block + interaction block
  double ss_linear_spline = 0.0;  // interior-knot degree-1 subtotal
  double ss_residual = 0.0;
  double pct_constant = 0.0;
  double pct_linear = 0.0;
  double pct_nonlinear = 0.0;
  double pct_residual = 0.0;
  double pct_nonlinearity = 0.0;
  int n_linear_terms = 0;
  int n_nonlinear_terms = 0;
};

/// Groups basis columns constant -> linear -> linear spline -> interaction,
/// orthogonalizes the blocks sequentially in that order and attributes each
/// block's explained sum of squares to its class; the residual closes the
/// partition. Shared variance is credited to the earlier class.
AnovaDecomposition decompose(const mars::MarsModel& model, const LagEmbedding& emb);

/// 100 * ss_nonlinear / ss_total. Throws on a zero total sum of squares.
double pct_nonlinearity(const AnovaDecomposition& decomposition);

}  // namespace tsmars::anova
