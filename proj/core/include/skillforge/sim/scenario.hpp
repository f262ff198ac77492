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
#include <vector>

#include "skillforge/sim/world.hpp"

namespace skillforge::sim {

struct ObjectTemplate {
  std::string id;
  ObjectKind kind = ObjectKind::Cube;
  Vec2 position;
  // attribute name -> values drawn uniformly at world creation; a single
  // value means the attribute is fixed.
  std::map<std::string, std::vector<std::string>> attributes;
};

struct ScenarioSpec {
  ScenarioId id = ScenarioId::Flat;
  std::vector<ObjectTemplate> objects;
  std::vector<std::string> predicates;
  // Attribute of the primary (first) object whose value labels haptic data.
  std::optional<std::string> label_attribute;
};

// Declarative scenario inventory, loaded from JSON. The default catalog is
// compiled in from data/scenarios.json.
class ScenarioCatalog {
 public:
  static ScenarioCatalog from_json(std::string_view text);
  static const ScenarioCatalog& builtin();

  const ScenarioSpec& scenario(ScenarioId id) const;
  const std::vector<ScenarioSpec>& scenarios() const { return scenarios_; }

  Vec2 bin_position() const { return bin_position_; }
  Vec3 home_pose() const { return home_pose_; }

  // Identical (scenario, seed) pairs produce identical worlds.
  WorldState create_world(ScenarioId id, std::uint64_t seed) const;

  // Builds the world for a situation: the seeded world with the situation's
  // attribute overrides applied to the primary object. Throws
  // ValidationError when an override names an unknown attribute or value.
  WorldState instantiate(const Situation& situation, std::uint64_t seed) const;

  // Every combination of the primary object's variable attributes.
  std::vector<Situation> enumerate_situations(ScenarioId id) const;

  // Ground-truth value of the scenario's label attribute in a world.
  std::string label_of(const WorldState& world) const;

 private:
  std::vector<ScenarioSpec> scenarios_;
  Vec2 bin_position_{9.0, 1.0};
  Vec3 home_pose_{5.0, 0.0, 5.0};
};

}  // namespace skillforge::sim
