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

#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace tsmars {

/// A calendar month, stored as a flat month count so that arithmetic and
/// ordering are plain integer operations.
class Month {
 public:
  Month() = default;
  static Month from_ym(int year, int month);

  /// Parses "YYYY-MM". Returns nullopt on malformed input.
  static std::optional<Month> parse(std::string_view text);

  int year() const { return index_ >= 0 ? index_ / 12 : -((-index_ + 11) / 12); }
  int month_of_year() const { return index_ - year() * 12 + 1; }

  /// Formats as "YYYY-MM".
  std::string str() const;

  Month operator+(int months) const { return Month(index_ + months); }
  Month operator-(int months) const { return Month(index_ - months); }
  int operator-(Month other) const { return index_ - other.index_; }
  Month& operator++() { ++index_; return *this; }

  friend auto operator<=>(Month, Month) = default;

 private:
  explicit Month(int index) : index_(index) {}
  int index_ = 0;
};

}  // namespace tsmars
