// Copyright 2026 The loopsynth Authors
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

#include <json.hpp>

#include "loopsynth/linalg.hpp"

namespace loopsynth::detail {

/// Serializes with every floating-point value printed to 17 significant
/// digits. Arrays of scalars stay on one line.
std::string dump_json(const nlohmann::json& value);

nlohmann::json matrix_to_json(const ComplexMatrix& m);

/// Parses {"dim", "entries"}; throws ParseError or DimensionError.
ComplexMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace loopsynth::detail
