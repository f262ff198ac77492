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

#include "skillforge/sim/world.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <set>
#include <sstream>

namespace skillforge::sim {
namespace {

constexpr std::array<std::string_view, 4> kScenarioNames = {"Book", "Tower", "Box", "Flat"};
constexpr std::array<std::string_view, 4> kKindNames = {"Book", "BoxStack", "LidBox", "Cube"};
constexpr std::array<std::string_view, 4> kOrientationNames = {"Deg0", "Deg90", "Deg180",
                                                               "Deg270"};

template <typename Enum, std::size_t N>
Enum parse_enum(std::string_view text, const std::array<std::string_view, N>& names,
                std::string_view what) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == text) return static_cast<Enum>(i);
  }
  // Case-insensitive fallback so CLI users can type "book" or "flat".
  auto lower = [](std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
  };
  for (std::size_t i = 0; i < N; ++i) {
    if (lower(names[i]) == lower(text)) return static_cast<Enum>(i);
  }
  throw NotFoundError("unknown " + std::string(what) + " '" + std::string(text) + "'");
}

bool in_workspace(const Vec2& p) {
  return p.x >= 0.0 && p.x <= kWorkspaceSize && p.y >= 0.0 && p.y <= kWorkspaceSize;
}

}  // namespace

std::string_view to_string(ScenarioId id) { return kScenarioNames[static_cast<int>(id)]; }
std::string_view to_string(ObjectKind kind) { return kKindNames[static_cast<int>(kind)]; }
std::string_view to_string(Orientation o) { return kOrientationNames[static_cast<int>(o)]; }

ScenarioId parse_scenario(std::string_view text) {
  return parse_enum<ScenarioId>(text, kScenarioNames, "scenario");
}
ObjectKind parse_object_kind(std::string_view text) {
  return parse_enum<ObjectKind>(text, kKindNames, "object kind");
}
Orientation parse_orientation(std::string_view text) {
  return parse_enum<Orientation>(text, kOrientationNames, "orientation");
}

int quarter_turns(Orientation o) { return static_cast<int>(o); }

Orientation rotate(Orientation o, int degrees) {
  if (degrees % 90 != 0) throw ValidationError("rotation must be a multiple of 90 degrees");
  int turns = (quarter_turns(o) + degrees / 90) % 4;
  if (turns < 0) turns += 4;
  return static_cast<Orientation>(turns);
}

const SimObject* WorldState::find(std::string_view id) const {
  for (const auto& object : objects) {
    if (object.id == id) return &object;
  }
  return nullptr;
}

SimObject* WorldState::find(std::string_view id) {
  for (auto& object : objects) {
    if (object.id == id) return &object;
  }
  return nullptr;
}

void check_invariants(const WorldState& world) {
  if (world.held_object && world.hand_open) {
    throw ValidationError("held object requires a closed hand");
  }
  if (world.held_object && world.find(*world.held_object) == nullptr) {
    throw ValidationError("held object '" + *world.held_object + "' does not exist");
  }
  std::set<std::string> ids;
  for (const auto& object : world.objects) {
    if (!ids.insert(object.id).second) {
      throw ValidationError("duplicate object id '" + object.id + "'");
    }
    if (!in_workspace(object.position)) {
      throw ValidationError("object '" + object.id + "' outside the workspace");
    }
    if (object.height < 0 || object.height > kMaxStackHeight) {
      throw ValidationError("object '" + object.id + "' height out of range");
    }
  }
  if (world.clock < 0) throw ValidationError("negative clock");
}

std::string Situation::describe() const {
  std::ostringstream out;
  out << to_string(scenario);
  if (!attributes.empty()) {
    out << '{';
    bool first = true;
    for (const auto& [key, value] : attributes) {
      if (!first) out << ',';
      out << key << '=' << value;
      first = false;
    }
    out << '}';
  }
  return out.str();
}

Situation parse_situation(std::string_view text) {
  Situation situation;
  auto brace = text.find('{');
  situation.scenario = parse_scenario(text.substr(0, brace));
  if (brace == std::string_view::npos) return situation;
  if (text.back() != '}') throw ValidationError("malformed situation '" + std::string(text) + "'");
  auto body = text.substr(brace + 1, text.size() - brace - 2);
  while (!body.empty()) {
    auto comma = body.find(',');
    auto pair = body.substr(0, comma);
    auto eq = pair.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("malformed situation attribute '" + std::string(pair) + "'");
    }
    situation.attributes.emplace(std::string(pair.substr(0, eq)), std::string(pair.substr(eq + 1)));
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return situation;
}

}  // namespace skillforge::sim
