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

#include "skillforge/skills/params.hpp"

#include <algorithm>
#include <sstream>

namespace skillforge::skills {

std::string_view to_string(ParamType type) {
  switch (type) {
    case ParamType::Int:
      return "int";
    case ParamType::Real:
      return "real";
    case ParamType::Vec2:
      return "vec2";
    case ParamType::Enum:
      return "enum";
  }
  return "?";
}

ParamType parse_param_type(std::string_view text) {
  if (text == "int") return ParamType::Int;
  if (text == "real") return ParamType::Real;
  if (text == "vec2") return ParamType::Vec2;
  if (text == "enum") return ParamType::Enum;
  throw ValidationError("unknown parameter type '" + std::string(text) + "'");
}

bool conforms(const ParamSpec& spec, const ParamValue& value) {
  switch (spec.type) {
    case ParamType::Int:
      return std::holds_alternative<std::int64_t>(value);
    case ParamType::Real:
      return std::holds_alternative<double>(value) || std::holds_alternative<std::int64_t>(value);
    case ParamType::Vec2:
      return std::holds_alternative<Vec2>(value);
    case ParamType::Enum: {
      const auto* s = std::get_if<std::string>(&value);
      if (s == nullptr) return false;
      for (const auto& allowed : spec.enum_values) {
        if (allowed == *s) return true;
      }
      return false;
    }
  }
  return false;
}

ParamMap resolve_params(const ParamSchema& schema, const ParamMap& params) {
  ParamMap out;
  for (const auto& [name, value] : params) {
    auto it = std::find_if(schema.begin(), schema.end(), [&](const ParamSpec& s) { return s.name == name; });
    if (it == schema.end()) throw ValidationError("unknown parameter '" + name + "'");
    if (!conforms(*it, value)) {
      throw ValidationError("parameter '" + name + "' is not a valid " + std::string(to_string(it->type)));
    }
    if (it->type == ParamType::Real) {
      if (const auto* i = std::get_if<std::int64_t>(&value)) {
        out[name] = static_cast<double>(*i);
        continue;
      }
    }
    out[name] = value;
  }
  for (const auto& spec : schema) {
    if (out.contains(spec.name)) continue;
    if (spec.default_value) {
      out[spec.name] = *spec.default_value;
    } else if (spec.required) {
      throw ValidationError("missing required parameter '" + spec.name + "'");
    }
  }
  return out;
}

std::string format_params(const ParamMap& params) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, value] : params) {
    if (!first) out << ',';
    first = false;
    out << name << '=';
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Vec2>) {
            out << '(' << v.x << ' ' << v.y << ')';
          } else {
            out << v;
          }
        },
        value);
  }
  return out.str();
}

std::optional<Vec2> get_vec2(const ParamMap& params, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end()) return std::nullopt;
  if (const auto* v = std::get_if<Vec2>(&it->second)) return *v;
  return std::nullopt;
}

std::optional<double> get_real(const ParamMap& params, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end()) return std::nullopt;
  if (const auto* v = std::get_if<double>(&it->second)) return *v;
  if (const auto* v = std::get_if<std::int64_t>(&it->second)) return static_cast<double>(*v);
  return std::nullopt;
}

std::optional<std::string> get_enum(const ParamMap& params, const std::string& name) {
  auto it = params.find(name);
  if (it == params.end()) return std::nullopt;
  if (const auto* v = std::get_if<std::string>(&it->second)) return *v;
  return std::nullopt;
}

}  // namespace skillforge::skills
