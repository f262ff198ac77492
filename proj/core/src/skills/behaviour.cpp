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

#include "skillforge/skills/behaviour.hpp"

#include <set>

namespace skillforge::skills {
namespace {

struct Scheduler {
  memory::CallTrace trace;
  std::uint64_t next_instance = 1;
  std::int64_t next_leaf = 0;
  std::int64_t last_leaf = 0;
  std::int64_t end = 0;

  // Returns the tick on which the node's last leaf ends.
  std::int64_t emit(const CallNode& node) {
    const std::uint64_t instance = next_instance++;
    const std::int64_t start = next_leaf;
    trace.push_back({memory::TraceEventKind::Enter, node.function, instance, start});
    std::int64_t stop = start;
    if (node.children.empty()) {
      stop = next_leaf == last_leaf ? end : next_leaf;
      ++next_leaf;
    } else {
      for (const auto& child : node.children) stop = emit(child);
    }
    trace.push_back({memory::TraceEventKind::Exit, node.function, instance, stop});
    return stop;
  }
};

void count_leaves(const CallNode& node, std::size_t& n) {
  if (node.children.empty()) {
    ++n;
    return;
  }
  for (const auto& child : node.children) count_leaves(child, n);
}

void collect(const CallNode& node, std::set<std::string>& seen, std::vector<std::string>& out) {
  if (seen.insert(node.function).second) out.push_back(node.function);
  for (const auto& child : node.children) collect(child, seen, out);
}

}  // namespace

std::string_view to_string(BehaviourCategory category) {
  switch (category) {
    case BehaviourCategory::Sensing:
      return "sensing";
    case BehaviourCategory::Motion:
      return "motion";
    case BehaviourCategory::Hand:
      return "hand";
    case BehaviourCategory::Perception:
      return "perception";
    case BehaviourCategory::Composite:
      return "composite";
    case BehaviourCategory::Void:
      return "void";
  }
  return "?";
}

std::size_t leaf_count(const std::vector<CallNode>& tree) {
  std::size_t n = 0;
  for (const auto& node : tree) count_leaves(node, n);
  return n;
}

std::vector<std::string> flatten(const std::vector<CallNode>& tree) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  for (const auto& node : tree) collect(node, seen, out);
  return out;
}

memory::CallTrace schedule_call_tree(const std::vector<CallNode>& tree, int duration) {
  const auto leaves = static_cast<std::int64_t>(leaf_count(tree));
  if (leaves > duration) {
    throw ValidationError("call tree has " + std::to_string(leaves) + " leaves but only " +
                          std::to_string(duration) + " ticks");
  }
  Scheduler s;
  s.last_leaf = leaves - 1;
  s.end = duration - 1;
  for (const auto& node : tree) s.emit(node);
  return std::move(s.trace);
}

}  // namespace skillforge::skills
