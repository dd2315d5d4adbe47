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

// Brute-force oracle for the first forward-pass step: for every (lag, knot)
// candidate it fits [1, hinge+, hinge-] by normal equations (Gaussian
// elimination, a computation path independent of the incremental scan in the
// library) and scores the same GCV with the same tie-break.

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <vector>

#include "tsmars/lag_embedding.hpp"
#include "tsmars/mars.hpp"

namespace tsmars::test {

struct OracleCandidate {
  double gcv = std::numeric_limits<double>::infinity();
  int lag = 0;
  double knot = 0.0;
  bool valid = false;
};

inline bool oracle_better(const OracleCandidate& a, const OracleCandidate& b) {
  if (!b.valid) return a.valid;
  if (!a.valid) return false;
  const double scale = std::max(std::abs(a.gcv), std::abs(b.gcv));
  if (a.gcv < b.gcv - 1e-12 * scale) return true;
  if (b.gcv < a.gcv - 1e-12 * scale) return false;
  if (a.lag != b.lag) return a.lag < b.lag;
  return a.knot < b.knot;
}

// Least squares via normal equations; sequentially drops columns whose
// Schur-complement pivot falls below 1e-9 of their squared norm (the same
// dependence rule the library uses, reached through a different route).
// Returns rss and the retained column count.
inline std::pair<double, int> normal_equation_fit(
    const std::vector<std::vector<double>>& cols, std::span<const double> y) {
  const std::size_t k = cols.size();
  const std::size_t n = y.size();
  std::vector<std::vector<double>> g(k, std::vector<double>(k, 0.0));
  std::vector<double> xty(k, 0.0);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b <= a; ++b) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) s += cols[a][i] * cols[b][i];
      g[a][b] = g[b][a] = s;
    }
    for (std::size_t i = 0; i < n; ++i) xty[a] += cols[a][i] * y[i];
  }

  // Left-looking elimination in column order with the sequential drop rule.
  std::vector<int> kept;
  std::vector<std::vector<double>> l;  // rows over kept columns
  std::vector<double> z;               // forward-substituted rhs
  for (std::size_t c = 0; c < k; ++c) {
    std::vector<double> row(kept.size(), 0.0);
    double pivot = g[c][c];
    double rhs = xty[c];
    for (std::size_t j = 0; j < kept.size(); ++j) {
      double s = g[c][static_cast<std::size_t>(kept[j])];
      for (std::size_t t = 0; t < j; ++t) s -= row[t] * l[j][t];
      row[j] = s / l[j][j];
      pivot -= row[j] * row[j];
      rhs -= row[j] * z[j];
    }
    if (!(g[c][c] > 0.0) || pivot <= 1e-9 * g[c][c]) continue;  // dependent
    row.push_back(std::sqrt(pivot));
    l.push_back(row);
    z.push_back(rhs / row.back());
    kept.push_back(static_cast<int>(c));
  }

  double yty = 0.0;
  for (std::size_t i = 0; i < n; ++i) yty += y[i] * y[i];
  double explained = 0.0;
  for (double v : z) explained += v * v;
  return {std::max(yty - explained, 0.0), static_cast<int>(kept.size())};
}

inline OracleCandidate brute_force_first_split(const LagEmbedding& emb,
                                               double penalty) {
  const auto y = emb.response();
  const std::size_t n = emb.rows();
  OracleCandidate best;
  for (int lag = 1; lag <= emb.max_lag(); ++lag) {
    const auto x = emb.lag_column(lag);
    std::set<double> knots(x.begin(), x.end());
    for (double knot : knots) {
      std::vector<std::vector<double>> cols(3, std::vector<double>(n));
      for (std::size_t i = 0; i < n; ++i) {
        cols[0][i] = 1.0;
        cols[1][i] = std::max(x[i] - knot, 0.0);
        cols[2][i] = std::max(knot - x[i], 0.0);
      }
      const auto [rss, n_basis] = normal_equation_fit(cols, y);
      if (n_basis <= 1) continue;  // both hinges degenerate
      const double c_eff = n_basis + penalty * (n_basis - 1);
      if (c_eff >= static_cast<double>(n)) continue;
      const double denom = 1.0 - c_eff / static_cast<double>(n);
      OracleCandidate cand;
      cand.gcv = (rss / static_cast<double>(n)) / (denom * denom);
      cand.lag = lag;
      cand.knot = knot;
      cand.valid = true;
      if (oracle_better(cand, best)) best = cand;
    }
  }
  return best;
}

}  // namespace tsmars::test
