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

#include "skillforge/sim/predicates.hpp"

namespace skillforge::sim {
namespace {

constexpr double kReach = 0.5;

const SimObject* first_of(const WorldState& world, ObjectKind kind) {
  for (const auto& object : world.objects) {
    if (object.kind == kind) return &object;
  }
  return nullptr;
}

}  // namespace

void PredicateRegistry::add(std::string id, Predicate predicate) {
  if (predicates_.contains(id)) throw ConflictError("predicate '" + id + "' already registered");
  predicates_.emplace(std::move(id), std::move(predicate));
}

bool PredicateRegistry::contains(std::string_view id) const {
  return predicates_.find(id) != predicates_.end();
}

std::vector<std::string> PredicateRegistry::ids() const {
  std::vector<std::string> out;
  for (const auto& [id, predicate] : predicates_) out.push_back(id);
  return out;
}

bool PredicateRegistry::evaluate(std::string_view id, const WorldState& world) const {
  auto it = predicates_.find(id);
  if (it == predicates_.end()) throw NotFoundError("unknown predicate '" + std::string(id) + "'");
  return it->second(world);
}

PredicateRegistry PredicateRegistry::builtin(const ScenarioCatalog& catalog) {
  PredicateRegistry r;
  const Vec2 bin = catalog.bin_position();
  const Vec3 home = catalog.home_pose();

  r.add("book_grasped", [](const WorldState& w) {
    const auto* book = first_of(w, ObjectKind::Book);
    return book != nullptr && w.held_object == book->id;
  });
  r.add("book_upright", [](const WorldState& w) {
    const auto* book = first_of(w, ObjectKind::Book);
    return book != nullptr && book->orientation == Orientation::Deg0;
  });
  r.add("tower_cleared", [](const WorldState& w) {
    const auto* tower = first_of(w, ObjectKind::BoxStack);
    return tower != nullptr && tower->height == 0;
  });
  r.add("tower_standing", [](const WorldState& w) {
    const auto* tower = first_of(w, ObjectKind::BoxStack);
    return tower != nullptr && tower->height > 0;
  });
  r.add("box_open", [](const WorldState& w) {
    const auto* box = first_of(w, ObjectKind::LidBox);
    return box != nullptr && box->open;
  });
  r.add("object_grasped", [](const WorldState& w) { return w.held_object.has_value(); });
  r.add("object_placed", [](const WorldState& w) { return w.placed > 0 && !w.held_object; });
  r.add("hand_empty", [](const WorldState& w) { return !w.held_object; });
  r.add("cube_in_bin", [bin](const WorldState& w) {
    const auto* cube = first_of(w, ObjectKind::Cube);
    return cube != nullptr && !w.held_object && distance(cube->position, bin) <= kReach;
  });
  r.add("object_in_front", [home](const WorldState& w) {
    if (w.objects.empty()) return false;
    const auto& p = w.objects.front().position;
    return std::abs(p.x - home.x) <= kReach && p.y <= 2.0 + kReach;
  });
  r.add("object_far", [](const WorldState& w) {
    return !w.objects.empty() && w.objects.front().position.y >= 8.0;
  });
  r.add("arm_at_home", [home](const WorldState& w) {
    return distance({w.arm_pose.x, w.arm_pose.y}, {home.x, home.y}) <= kReach &&
           std::abs(w.arm_pose.z - home.z) <= kReach;
  });
  return r;
}

}  // namespace skillforge::sim
