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
#include <span>
#include <vector>

namespace tsmars::linalg {

/// A column is treated as dependent when its residual against the current
/// span retains less than this fraction of its squared norm.
inline constexpr double kRankTol = 1e-9;

/// Orthonormal basis grown one column at a time with modified Gram-Schmidt
/// and one reorthogonalization pass.
class OrthoBasis {
 public:
  explicit OrthoBasis(std::size_t rows) : rows_(rows) {}

  /// Orthogonalizes `col` against the current basis and appends it when it
  /// is numerically independent. Returns false (and leaves the basis
  /// unchanged) otherwise.
  bool push(std::span<const double> col);

  std::size_t size() const { return count_; }
  std::size_t rows() const { return rows_; }
  std::span<const double> column(std::size_t j) const {
    return {data_.data() + j * rows_, rows_};
  }

 private:
  std::size_t rows_;
  std::size_t count_ = 0;
  std::vector<double> data_;
  std::vector<double> scratch_;
};

struct LeastSquares {
  std::vector<double> coefficients;  // per input column; dependent columns get 0
  std::vector<double> fitted;
  std::vector<double> residuals;
  double rss = 0.0;
  std::vector<std::size_t> dropped;  // indices of dependent columns
};

/// Least squares of y on the given columns via MGS-QR. Dependent columns are
/// dropped with zero coefficients; the residual is orthogonal to the column
/// space to well below 1e-8 relative.
LeastSquares solve_least_squares(std::span<const std::span<const double>> columns,
                                 std::span<const double> y);

}  // namespace tsmars::linalg
