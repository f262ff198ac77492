/* Copyright 2026 The SkillForge Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "skillforge/common.hpp"

namespace skillforge::skills {

enum class ParamType { Int, Real, Vec2, Enum };

std::string_view to_string(ParamType type);
ParamType parse_param_type(std::string_view text);

using ParamValue = std::variant<std::int64_t, double, Vec2, std::string>;
using ParamMap = std::map<std::string, ParamValue>;

struct ParamSpec {
  std::string name;
  ParamType type = ParamType::Real;
  bool required = false;
  std::vector<std::string> enum_values;  // Enum only
  std::optional<ParamValue> default_value;
};

using ParamSchema = std::vector<ParamSpec>;

// Checks one value against its spec; Int values are accepted for Real specs.
bool conforms(const ParamSpec& spec, const ParamValue& value);

// Validates `params` against `schema` and fills in defaults. Throws
// ValidationError on unknown names, missing required values or type errors.
ParamMap resolve_params(const ParamSchema& schema, const ParamMap& params);

// Deterministic "k=v,k=v" rendering used for clip labels.
std::string format_params(const ParamMap& params);

std::optional<Vec2> get_vec2(const ParamMap& params, const std::string& name);
std::optional<double> get_real(const ParamMap& params, const std::string& name);
std::optional<std::string> get_enum(const ParamMap& params, const std::string& name);

}  // namespace skillforge::skills
