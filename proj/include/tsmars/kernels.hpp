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

// Arithmetic inner loops used by the fitting and filtering code. Every
// kernel has a scalar reference implementation; on x86-64 an AVX2+FMA
// variant is selected once at startup when the CPU supports it. The two
// variants are equivalence-tested against each other.
//
// Set TSMARS_KERNELS=scalar in the environment to pin the scalar path.

namespace tsmars::kernels {

/// Sums over the per-basis inner products needed to score one knot during
/// the forward-pass scan. With v_j = w_pos[j] - xi * u_pos[j] (projection of
/// the positive hinge column on basis j) and
/// m_j = xi * (u_tot[j] - u_pos[j]) - (w_tot[j] - w_pos[j]) (reflected side),
/// accumulates Sum v^2, Sum v*g, Sum m^2, Sum m*g and the cross term Sum v*m.
struct PairEval {
  double vv;
  double vg;
  double mm;
  double mg;
  double vm;
};

using DotFn = double (*)(const double*, const double*, std::size_t);
using SumFn = double (*)(const double*, std::size_t);
using AxpyFn = void (*)(double, const double*, double*, std::size_t);
using HingeFn = void (*)(const double*, double, double*, std::size_t);
using MulFn = void (*)(const double*, const double*, double*, std::size_t);
using PairEvalFn = PairEval (*)(const double*, const double*, const double*,
                                const double*, const double*, double,
                                std::size_t);

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void hinge_pos(const double* x, double knot, double* out, std::size_t n);
void hinge_neg(const double* x, double knot, double* out, std::size_t n);
void mul(const double* a, const double* b, double* out, std::size_t n);
PairEval knot_pair_eval(const double* w_pos, const double* u_pos,
                        const double* w_tot, const double* u_tot,
                        const double* g, double xi, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool available();  // compiled in and supported by this CPU
double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void hinge_pos(const double* x, double knot, double* out, std::size_t n);
void hinge_neg(const double* x, double knot, double* out, std::size_t n);
void mul(const double* a, const double* b, double* out, std::size_t n);
PairEval knot_pair_eval(const double* w_pos, const double* u_pos,
                        const double* w_tot, const double* u_tot,
                        const double* g, double xi, std::size_t n);
}  // namespace avx2

// Dispatched entry points.
extern const DotFn dot;
extern const SumFn sum;
extern const AxpyFn axpy;
extern const HingeFn hinge_pos;
extern const HingeFn hinge_neg;
extern const MulFn mul;
extern const PairEvalFn knot_pair_eval;

/// Name of the selected backend: "avx2" or "scalar".
const char* active_backend();

}  // namespace tsmars::kernels
