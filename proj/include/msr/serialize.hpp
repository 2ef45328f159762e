// Copyright 2026 The msrcode Authors
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

#include <string>

#include "json.hpp"
#include "msr/code_spec.hpp"
#include "msr/codec.hpp"
#include "msr/verify.hpp"

namespace msr {

inline constexpr const char* kCodeSpecSchema = "msr-codespec/1";

// Parsing functions throw Error(kFormat) on malformed input.
nlohmann::json field_to_json(const Field& field);
Field field_from_json(const nlohmann::json& j);
// Parses "5", "F_5", "gf2^8", "gf2^8:0x11d".
Field parse_field(const std::string& text);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Field& field, const nlohmann::json& j, std::size_t cols);

nlohmann::json code_to_json(const CodeSpec& code);
CodeSpec code_from_json(const nlohmann::json& j);
// Compact dump with sorted keys; identical specs give identical bytes.
std::string code_to_string(const CodeSpec& code);
CodeSpec code_from_string(const std::string& text);

nlohmann::json transcript_to_json(const RepairTranscript& t);
nlohmann::json metrics_to_json(const MetricsReport& m);

}  // namespace msr
