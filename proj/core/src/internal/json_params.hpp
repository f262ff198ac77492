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

#include <json.hpp>

#include "skillforge/skills/params.hpp"

namespace skillforge::internal {

// vec2 values travel as [x, y]; enums as strings.
inline nlohmann::json param_to_json(const skills::ParamValue& value) {
  return std::visit(
      [](const auto& v) -> nlohmann::json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Vec2>) {
          return nlohmann::json::array({v.x, v.y});
        } else {
          return v;
        }
      },
      value);
}

inline std::optional<skills::ParamValue> param_from_json(const nlohmann::json& v) {
  if (v.is_number_integer()) return skills::ParamValue(v.get<std::int64_t>());
  if (v.is_number_float()) return skills::ParamValue(v.get<double>());
  if (v.is_string()) return skills::ParamValue(v.get<std::string>());
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
    return skills::ParamValue(Vec2{v[0].get<double>(), v[1].get<double>()});
  }
  return std::nullopt;
}

inline nlohmann::json params_to_json(const skills::ParamMap& params) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [name, value] : params) out[name] = param_to_json(value);
  return out;
}

}  // namespace skillforge::internal
