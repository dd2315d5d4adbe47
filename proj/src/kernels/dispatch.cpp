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

#include <cstdlib>
#include <cstring>

#include "tsmars/kernels.hpp"

namespace tsmars::kernels {

namespace {

bool use_avx2() {
  const char* env = std::getenv("TSMARS_KERNELS");
  if (env != nullptr && std::strcmp(env, "scalar") == 0) return false;
  return avx2::available();
}

const bool kUseAvx2 = use_avx2();

}  // namespace

const DotFn dot = kUseAvx2 ? avx2::dot : scalar::dot;
const SumFn sum = kUseAvx2 ? avx2::sum : scalar::sum;
const AxpyFn axpy = kUseAvx2 ? avx2::axpy : scalar::axpy;
const HingeFn hinge_pos = kUseAvx2 ? avx2::hinge_pos : scalar::hinge_pos;
const HingeFn hinge_neg = kUseAvx2 ? avx2::hinge_neg : scalar::hinge_neg;
const MulFn mul = kUseAvx2 ? avx2::mul : scalar::mul;
const PairEvalFn knot_pair_eval =
    kUseAvx2 ? avx2::knot_pair_eval : scalar::knot_pair_eval;

const char* active_backend() { return kUseAvx2 ? "avx2" : "scalar"; }

}  // namespace tsmars::kernels
