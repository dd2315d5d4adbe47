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

#include <cstdint>
#include <random>
#include <vector>

#include "tsmars/lag_embedding.hpp"
#include "tsmars/month.hpp"
#include "tsmars/series.hpp"

namespace tsmars::test {

inline Month m(int year, int month) { return Month::from_ym(year, month); }

inline GrowthSeries growth_of(std::vector<double> values,
                              Month start = Month::from_ym(1970, 1)) {
  return GrowthSeries(start, std::move(values));
}

inline LagEmbedding embed_of(std::vector<double> values, int p) {
  return embed_lags(growth_of(std::move(values)), p);
}

/// Uniform draws in [lo, hi] from a pinned engine, for property tests.
class UniformRng {
 public:
  explicit UniformRng(std::uint64_t seed) : gen_(seed) {}
  double operator()(double lo = -1.0, double hi = 1.0) {
    const double u = static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }
  std::vector<double> vec(std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::vector<double> out(n);
    for (auto& v : out) v = (*this)(lo, hi);
    return out;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace tsmars::test
