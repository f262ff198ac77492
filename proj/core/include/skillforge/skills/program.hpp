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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skillforge/common.hpp"
#include "skillforge/skills/params.hpp"

namespace skillforge::skills {

enum class NodeKind { Sequence, Loop, BehaviourCall, SkillCall, HardwareDecl, WaypointMotion };

std::string_view to_string(NodeKind kind);

inline constexpr int kAstVersion = 1;
inline constexpr int kMaxLoopCount = 1000;

// One block of a visual program. Fields irrelevant to `kind` stay empty; a
// Loop's body is its single child.
struct ProgramNode {
  NodeKind kind = NodeKind::Sequence;
  std::vector<ProgramNode> children;
  std::string behaviour;
  std::string skill;
  ParamMap params;
  std::optional<int> count;
  std::optional<std::string> while_predicate;
  std::vector<std::string> hardware;
  std::vector<Vec3> waypoints;

  friend bool operator==(const ProgramNode&, const ProgramNode&) = default;
};

struct ProgramAst {
  int version = kAstVersion;
  ProgramNode root;

  friend bool operator==(const ProgramAst&, const ProgramAst&) = default;
};

// Node-level problem found while parsing or validating; `path` looks like
// "root.children[2].body".
struct Diagnostic {
  std::string path;
  std::string message;
};

class ProgramError : public ValidationError {
 public:
  explicit ProgramError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// JSON document form:
//   {"ast_version": 1, "root": <node>}
//   node = {"kind": "Sequence", "children": [...]}
//        | {"kind": "Loop", "count": n | "while": "<predicate>", "body": <node>}
//        | {"kind": "BehaviourCall", "behaviour": "<id>", "params": {...}}
//        | {"kind": "SkillCall", "skill": "<id>"}
//        | {"kind": "HardwareDecl", "hardware": ["left_arm", ...]}
//        | {"kind": "WaypointMotion", "waypoints": [[x, y, z], ...]}
// vec2 parameters are [x, y]; enum parameters are strings.
ProgramAst parse_program(std::string_view json_text);
std::string serialize_program(const ProgramAst& ast);

// Convenience constructors used by the catalog and tests.
ProgramNode sequence(std::vector<ProgramNode> children);
ProgramNode loop(int count, ProgramNode body);
ProgramNode loop_while(std::string predicate, ProgramNode body);
ProgramNode call(std::string behaviour, ParamMap params = {});
ProgramNode skill_call(std::string skill);
ProgramNode hardware_decl(std::vector<std::string> names);
ProgramNode waypoints(std::vector<Vec3> poses);

}  // namespace skillforge::skills
