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
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skillforge/common.hpp"

namespace skillforge::sim {

enum class ScenarioId { Book, Tower, Box, Flat };
enum class ObjectKind { Book, BoxStack, LidBox, Cube };
enum class Orientation { Deg0, Deg90, Deg180, Deg270 };

// What the arm is doing to an object while a sensing action runs. This is
// robot-internal state that only the sensor model reads.
enum class ContactMode { None, Slide, Poke, Press };

inline constexpr double kWorkspaceSize = 10.0;
inline constexpr int kMaxStackHeight = 5;

std::string_view to_string(ScenarioId id);
std::string_view to_string(ObjectKind kind);
std::string_view to_string(Orientation o);
ScenarioId parse_scenario(std::string_view text);
ObjectKind parse_object_kind(std::string_view text);
Orientation parse_orientation(std::string_view text);

// Quarter turns counted counter-clockwise; accepts negative values.
Orientation rotate(Orientation o, int degrees);
int quarter_turns(Orientation o);

struct SimObject {
  std::string id;
  ObjectKind kind = ObjectKind::Cube;
  Vec2 position;
  Orientation orientation = Orientation::Deg0;
  int height = 0;     // BoxStack only
  bool open = false;  // LidBox only

  friend bool operator==(const SimObject&, const SimObject&) = default;
};

struct WorldState {
  ScenarioId scenario = ScenarioId::Flat;
  std::vector<SimObject> objects;
  Vec3 arm_pose;
  bool hand_open = true;
  std::optional<std::string> held_object;
  std::int64_t clock = 0;

  // Robot-internal bookkeeping.
  std::optional<std::string> localised_object;
  int placed = 0;  // objects deposited in the bin so far
  ContactMode contact = ContactMode::None;

  const SimObject* find(std::string_view id) const;
  SimObject* find(std::string_view id);

  friend bool operator==(const WorldState&, const WorldState&) = default;
};

// Throws ValidationError naming the first violated invariant.
void check_invariants(const WorldState& world);

// A situation is a scenario plus attribute overrides for its primary object,
// e.g. {"scenario": "Book", "orientation": "Deg90"}.
struct Situation {
  ScenarioId scenario = ScenarioId::Flat;
  std::map<std::string, std::string> attributes;

  std::string describe() const;
  friend bool operator==(const Situation&, const Situation&) = default;
};

Situation parse_situation(std::string_view text);

}  // namespace skillforge::sim
