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
#include <span>
#include <vector>

namespace tsmars::sim {

/// Standard-normal generator built on mt19937_64 with an explicit
/// Box-Muller transform, so streams are identical across platforms and
/// standard libraries.
class NormalRng {
 public:
  explicit NormalRng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {  // (0, 1]
    return 1.0 - (static_cast<double>(gen_() >> 11) * 0x1.0p-53);
  }

  double next();

 private:
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::vector<double> white_noise(std::size_t n, double sd, std::uint64_t seed);

/// Two-regime self-exciting threshold AR(1): slope phi_low when the previous
/// value is at or below the threshold, phi_high above it. 200 burn-in draws
/// are discarded.
std::vector<double> setar(std::size_t n, double threshold, double phi_low,
                          double phi_high, double noise_sd, std::uint64_t seed);

/// Fractional noise: white noise passed through the expanding-window inverse
/// filter (1-B)^{-d}.
std::vector<double> fractional_noise(std::size_t n, double d, double noise_sd,
                                     std::uint64_t seed);

/// AR on an explicit lag set, zero pre-sample and 200 burn-in draws.
std::vector<double> subset_ar(std::size_t n, std::span<const int> lags,
                              std::span<const double> coeffs, double noise_sd,
                              std::uint64_t seed);

}  // namespace tsmars::sim
