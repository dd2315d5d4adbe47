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

#include "tsmars/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tsmars/arfima.hpp"
#include "tsmars/errors.hpp"

namespace tsmars::sim {

namespace {
constexpr std::size_t kBurnIn = 200;
}

double NormalRng::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::vector<double> white_noise(std::size_t n, double sd, std::uint64_t seed) {
  if (!(sd > 0.0)) throw DataError("simulate: noise sd must be positive");
  NormalRng rng(seed);
  std::vector<double> out(n);
  for (auto& v : out) v = sd * rng.next();
  return out;
}

std::vector<double> setar(std::size_t n, double threshold, double phi_low,
                          double phi_high, double noise_sd, std::uint64_t seed) {
  if (!(noise_sd > 0.0)) throw DataError("simulate: noise sd must be positive");
  // Sufficient two-regime ergodicity condition.
  if (phi_low >= 1.0 || phi_high >= 1.0 || phi_low * phi_high >= 1.0) {
    throw DataError("simulate: explosive SETAR regimes");
  }
  NormalRng rng(seed);
  std::vector<double> out(n);
  double z = 0.0;
  for (std::size_t t = 0; t < kBurnIn + n; ++t) {
    const double phi = z <= threshold ? phi_low : phi_high;
    z = phi * z + noise_sd * rng.next();
    if (t >= kBurnIn) out[t - kBurnIn] = z;
  }
  return out;
}

std::vector<double> fractional_noise(std::size_t n, double d, double noise_sd,
                                     std::uint64_t seed) {
  if (!(d >= 0.0 && d < 1.0)) {
    throw DataError("simulate: fractional order must lie in [0, 1)");
  }
  auto eps = white_noise(n, noise_sd, seed);
  if (d == 0.0) return eps;
  return arfima::apply_fracdiff(eps, -d);
}

std::vector<double> subset_ar(std::size_t n, std::span<const int> lags,
                              std::span<const double> coeffs, double noise_sd,
                              std::uint64_t seed) {
  if (lags.size() != coeffs.size() || lags.empty()) {
    throw DataError("simulate: lag and coefficient lists must match");
  }
  if (!(noise_sd > 0.0)) throw DataError("simulate: noise sd must be positive");
  const int max_lag = *std::max_element(lags.begin(), lags.end());
  if (max_lag < 1) throw DataError("simulate: lags must be >= 1");

  NormalRng rng(seed);
  const std::size_t total = kBurnIn + n + static_cast<std::size_t>(max_lag);
  std::vector<double> z(total, 0.0);
  for (std::size_t t = static_cast<std::size_t>(max_lag); t < total; ++t) {
    double v = noise_sd * rng.next();
    for (std::size_t j = 0; j < lags.size(); ++j) {
      v += coeffs[j] * z[t - static_cast<std::size_t>(lags[j])];
    }
    z[t] = v;
    if (!(std::abs(v) < 1e6)) {
      throw DataError("simulate: AR coefficients produce an explosive path");
    }
  }
  return {z.end() - static_cast<std::ptrdiff_t>(n), z.end()};
}

}  // namespace tsmars::sim
