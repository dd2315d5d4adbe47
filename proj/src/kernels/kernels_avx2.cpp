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

#if defined(__x86_64__) && defined(__AVX2__)
#define TSMARS_HAVE_AVX2 1
#include <immintrin.h>
#else
#define TSMARS_HAVE_AVX2 0
#endif

namespace tsmars::kernels::avx2 {

#if TSMARS_HAVE_AVX2

bool available() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double tail = 0.0;
  for (; i < n; ++i) tail += a[i] * b[i];
  return hsum(_mm256_add_pd(acc0, acc1)) + tail;
}

double sum(const double* a, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
  double tail = 0.0;
  for (; i < n; ++i) tail += a[i];
  return hsum(acc) + tail;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void hinge_pos(const double* x, double knot, double* out, std::size_t n) {
  const __m256d vk = _mm256_set1_pd(knot);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_sub_pd(_mm256_loadu_pd(x + i), vk);
    _mm256_storeu_pd(out + i, _mm256_max_pd(v, zero));
  }
  for (; i < n; ++i) {
    const double v = x[i] - knot;
    out[i] = v > 0.0 ? v : 0.0;
  }
}

void hinge_neg(const double* x, double knot, double* out, std::size_t n) {
  const __m256d vk = _mm256_set1_pd(knot);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d v = _mm256_sub_pd(vk, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(out + i, _mm256_max_pd(v, zero));
  }
  for (; i < n; ++i) {
    const double v = knot - x[i];
    out[i] = v > 0.0 ? v : 0.0;
  }
}

void mul(const double* a, const double* b, double* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

PairEval knot_pair_eval(const double* w_pos, const double* u_pos,
                        const double* w_tot, const double* u_tot,
                        const double* g, double xi, std::size_t n) {
  const __m256d vxi = _mm256_set1_pd(xi);
  __m256d vv = _mm256_setzero_pd();
  __m256d vg = _mm256_setzero_pd();
  __m256d mm = _mm256_setzero_pd();
  __m256d mg = _mm256_setzero_pd();
  __m256d vm = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d wp = _mm256_loadu_pd(w_pos + i);
    const __m256d up = _mm256_loadu_pd(u_pos + i);
    const __m256d wt = _mm256_loadu_pd(w_tot + i);
    const __m256d ut = _mm256_loadu_pd(u_tot + i);
    const __m256d gg = _mm256_loadu_pd(g + i);
    // v = wp - xi*up ; m = xi*(ut-up) - (wt-wp)
    const __m256d v = _mm256_fnmadd_pd(vxi, up, wp);
    const __m256d m = _mm256_fmsub_pd(vxi, _mm256_sub_pd(ut, up), _mm256_sub_pd(wt, wp));
    vv = _mm256_fmadd_pd(v, v, vv);
    vg = _mm256_fmadd_pd(v, gg, vg);
    mm = _mm256_fmadd_pd(m, m, mm);
    mg = _mm256_fmadd_pd(m, gg, mg);
    vm = _mm256_fmadd_pd(v, m, vm);
  }
  PairEval acc{hsum(vv), hsum(vg), hsum(mm), hsum(mg), hsum(vm)};
  for (; i < n; ++i) {
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

#else  // TSMARS_HAVE_AVX2

bool available() { return false; }

double dot(const double* a, const double* b, std::size_t n) {
  return scalar::dot(a, b, n);
}
double sum(const double* a, std::size_t n) { return scalar::sum(a, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) {
  scalar::axpy(alpha, x, y, n);
}
void hinge_pos(const double* x, double knot, double* out, std::size_t n) {
  scalar::hinge_pos(x, knot, out, n);
}
void hinge_neg(const double* x, double knot, double* out, std::size_t n) {
  scalar::hinge_neg(x, knot, out, n);
}
void mul(const double* a, const double* b, double* out, std::size_t n) {
  scalar::mul(a, b, out, n);
}
PairEval knot_pair_eval(const double* w_pos, const double* u_pos,
                        const double* w_tot, const double* u_tot,
                        const double* g, double xi, std::size_t n) {
  return scalar::knot_pair_eval(w_pos, u_pos, w_tot, u_tot, g, xi, n);
}

#endif

}  // namespace tsmars::kernels::avx2
