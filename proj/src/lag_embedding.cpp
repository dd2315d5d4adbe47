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

#include "tsmars/lag_embedding.hpp"

#include <string>

#include "tsmars/errors.hpp"

namespace tsmars {

LagEmbedding embed_lags(const GrowthSeries& series, int p) {
  if (p < 1) throw DataError("lag embedding: p must be >= 1");
  if (series.size() <= static_cast<std::size_t>(p)) {
    throw DataError("lag embedding: series length " +
                    std::to_string(series.size()) +
                    " too short for p = " + std::to_string(p));
  }
  LagEmbedding emb;
  emb.p_ = p;
  emb.rows_ = series.size() - static_cast<std::size_t>(p);
  emb.start_ = series.start() + p;
  emb.response_.resize(emb.rows_);
  emb.columns_.resize(emb.rows_ * static_cast<std::size_t>(p));
  const auto z = series.values();
  for (std::size_t i = 0; i < emb.rows_; ++i) emb.response_[i] = z[i + p];
  for (int j = 1; j <= p; ++j) {
    double* col = emb.columns_.data() + static_cast<std::size_t>(j - 1) * emb.rows_;
    for (std::size_t i = 0; i < emb.rows_; ++i) col[i] = z[i + p - j];
  }
  return emb;
}

}  // namespace tsmars
