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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

// Small deterministic optimizers used by the estimation code. Fixed
// iteration budgets and tolerances keep repeated runs bit-identical.

namespace tsmars::optim {

/// Golden-section minimization on [lo, hi] to the given x tolerance.
template <class F>
double golden_section(F&& f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 <= f2 ? x1 : x2;
}

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
};

/// Standard Nelder-Mead with a fixed evaluation budget. The initial simplex
/// is the start point plus per-coordinate steps.
inline NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> start, double step, std::size_t max_evals,
    double f_tol) {
  const std::size_t dim = start.size();
  struct Vertex {
    std::vector<double> x;
    double value;
  };
  std::vector<Vertex> simplex;
  simplex.reserve(dim + 1);
  simplex.push_back({start, f(start)});
  for (std::size_t i = 0; i < dim; ++i) {
    auto x = start;
    x[i] += step;
    simplex.push_back({x, f(x)});
  }
  std::size_t evals = dim + 1;

  auto order = [&] {
    std::stable_sort(simplex.begin(), simplex.end(),
                     [](const Vertex& a, const Vertex& b) { return a.value < b.value; });
  };
  order();

  std::vector<double> centroid(dim), trial(dim);
  while (evals < max_evals) {
    if (std::abs(simplex.back().value - simplex.front().value) <=
        f_tol * (std::abs(simplex.front().value) + f_tol)) {
      break;
    }
    for (std::size_t i = 0; i < dim; ++i) {
      double s = 0.0;
      for (std::size_t v = 0; v < dim; ++v) s += simplex[v].x[i];
      centroid[i] = s / static_cast<double>(dim);
    }
    auto blend = [&](double coeff) {
      for (std::size_t i = 0; i < dim; ++i) {
        trial[i] = centroid[i] + coeff * (simplex.back().x[i] - centroid[i]);
      }
    };

    blend(-1.0);  // reflection
    double fr = f(trial);
    ++evals;
    if (fr < simplex.front().value) {
      auto reflected = trial;
      blend(-2.0);  // expansion
      const double fe = f(trial);
      ++evals;
      if (fe < fr) {
        simplex.back() = {trial, fe};
      } else {
        simplex.back() = {reflected, fr};
      }
    } else if (fr < simplex[dim - 1].value) {
      simplex.back() = {trial, fr};
    } else {
      blend(fr < simplex.back().value ? -0.5 : 0.5);  // contraction
      const double fc = f(trial);
      ++evals;
      if (fc < std::min(fr, simplex.back().value)) {
        simplex.back() = {trial, fc};
      } else {
        // shrink toward the best vertex
        for (std::size_t v = 1; v <= dim; ++v) {
          for (std::size_t i = 0; i < dim; ++i) {
            simplex[v].x[i] = 0.5 * (simplex[v].x[i] + simplex.front().x[i]);
          }
          simplex[v].value = f(simplex[v].x);
          ++evals;
        }
      }
    }
    order();
  }
  return {simplex.front().x, simplex.front().value};
}

}  // namespace tsmars::optim
