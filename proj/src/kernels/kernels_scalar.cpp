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

#include "tsmars/kernels.hpp"

namespace tsmars::kernels::scalar {

double dot(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double sum(const double* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i];
  return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void hinge_pos(const double* x, double knot, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double v = x[i] - knot;
    out[i] = v > 0.0 ? v : 0.0;
  }
}

void hinge_neg(const double* x, double knot, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double v = knot - x[i];
    out[i] = v > 0.0 ? v : 0.0;
  }
}

void mul(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

PairEval knot_pair_eval(const double* w_pos, const double* u_pos,
                        const double* w_tot, const double* u_tot,
                        const double* g, double xi, std::size_t n) {
  PairEval acc{0.0, 0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double v = w_pos[i] - xi * u_pos[i];
    const double m = xi * (u_tot[i] - u_pos[i]) - (w_tot[i] - w_pos[i]);
    acc.vv += v * v;
    acc.vg += v * g[i];
    acc.mm += m * m;
    acc.mg += m * g[i];
    acc.vm += v * m;
  }
  return acc;
}

}  // namespace tsmars::kernels::scalar
