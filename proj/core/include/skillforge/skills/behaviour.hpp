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

#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "skillforge/memory/profiling.hpp"
#include "skillforge/sim/world.hpp"
#include "skillforge/skills/params.hpp"

namespace skillforge::skills {

enum class BehaviourCategory { Sensing, Motion, Hand, Perception, Composite, Void };

std::string_view to_string(BehaviourCategory category);

struct CallNode {
  std::string function;
  std::vector<CallNode> children;

  friend bool operator==(const CallNode&, const CallNode&) = default;
};

struct BehaviourDescriptor {
  std::string id;
  BehaviourCategory category = BehaviourCategory::Motion;
  std::string description;
  std::set<std::string> required_hardware;
  ParamSchema parameter_schema;
  std::vector<CallNode> call_tree;
  int duration_ticks = 5;
};

inline constexpr int kSensingTicks = 10;
inline constexpr int kMotionTicks = 5;
inline constexpr const char* kVoidBehaviour = "b_void";

// The effect of a primitive behaviour on the world. Infeasible transitions
// (nothing to grasp, nothing to place) make the behaviour fail after its full
// duration; `next` then holds whatever state the attempt left behind.
struct Transition {
  Transition() = default;
  explicit Transition(sim::WorldState world) : next(std::move(world)) {}

  sim::WorldState next;
  bool feasible = true;
  std::string failure;
  sim::ContactMode contact = sim::ContactMode::None;
};

using PrimitiveExecutor = std::function<Transition(const sim::WorldState&, const ParamMap&)>;

// Lays a call tree onto `duration` ticks. Every leaf owns one tick in
// depth-first order, the final leaf absorbs the remaining ticks, and parents
// span their children. Events are relative to tick 0 and well nested.
// Throws ValidationError if the tree has more leaves than ticks.
memory::CallTrace schedule_call_tree(const std::vector<CallNode>& tree, int duration);

std::size_t leaf_count(const std::vector<CallNode>& tree);

// Every function id in the tree, in first-occurrence order.
std::vector<std::string> flatten(const std::vector<CallNode>& tree);

}  // namespace skillforge::skills
