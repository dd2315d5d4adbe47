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

#include "tsmars/month.hpp"

#include <charconv>
#include <cstdio>

namespace tsmars {

Month Month::from_ym(int year, int month) {
  return Month(year * 12 + (month - 1));
}

std::optional<Month> Month::parse(std::string_view text) {
  // Expected layout: 4-digit year, '-', 2-digit month.
  if (text.size() != 7 || text[4] != '-') return std::nullopt;
  int year = 0;
  int month = 0;
  auto [py, ey] = std::from_chars(text.data(), text.data() + 4, year);
  auto [pm, em] = std::from_chars(text.data() + 5, text.data() + 7, month);
  if (ey != std::errc{} || em != std::errc{}) return std::nullopt;
  if (py != text.data() + 4 || pm != text.data() + 7) return std::nullopt;
  if (month < 1 || month > 12) return std::nullopt;
  return from_ym(year, month);
}

std::string Month::str() const {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%04d-%02d", year(), month_of_year());
  return buf;
}

}  // namespace tsmars
