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

#include <filesystem>
#include <string>
#include <variant>

#include "tsmars/arfima.hpp"
#include "tsmars/mars.hpp"

namespace tsmars::io {

using AnyModel =
    std::variant<mars::MarsModel, arfima::SubsetArModel, arfima::ArfimaModel>;

/// Model files are JSON with a `kind` discriminator ("mars", "subset_ar",
/// "arfima"). Numeric fields survive serialize -> parse -> serialize
/// byte-identically.
std::string serialize_model(const AnyModel& model);
AnyModel parse_model(const std::string& text);

void save_model(const std::filesystem::path& path, const AnyModel& model);
AnyModel load_model(const std::filesystem::path& path);

}  // namespace tsmars::io
