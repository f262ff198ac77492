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

#include "skillforge/skills/program.hpp"

#include <algorithm>
#include <array>
#include <json.hpp>
#include <set>

#include "internal/json_params.hpp"

namespace skillforge::skills {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 6> kKindNames = {
    "Sequence", "Loop", "BehaviourCall", "SkillCall", "HardwareDecl", "WaypointMotion"};

const std::map<NodeKind, std::set<std::string>> kAllowedKeys = {
    {NodeKind::Sequence, {"kind", "children"}},
    {NodeKind::Loop, {"kind", "count", "while", "body"}},
    {NodeKind::BehaviourCall, {"kind", "behaviour", "params"}},
    {NodeKind::SkillCall, {"kind", "skill"}},
    {NodeKind::HardwareDecl, {"kind", "hardware"}},
    {NodeKind::WaypointMotion, {"kind", "waypoints"}},
};

class Parser {
 public:
  std::vector<Diagnostic> diagnostics;

  ProgramNode node(const json& j, const std::string& path) {
    ProgramNode out;
    if (!j.is_object()) {
      fail(path, "node must be an object");
      return out;
    }
    auto kind_it = j.find("kind");
    if (kind_it == j.end() || !kind_it->is_string()) {
      fail(path, "node needs a string 'kind'");
      return out;
    }
    const auto kind_name = kind_it->get<std::string>();
    auto kind = std::find(kKindNames.begin(), kKindNames.end(), kind_name);
    if (kind == kKindNames.end()) {
      fail(path, "unknown node kind '" + kind_name + "'");
      return out;
    }
    out.kind = static_cast<NodeKind>(kind - kKindNames.begin());
    for (const auto& [key, value] : j.items()) {
      if (!kAllowedKeys.at(out.kind).contains(key)) {
        fail(path, "unexpected key '" + key + "' for " + kind_name);
      }
    }

    switch (out.kind) {
      case NodeKind::Sequence: {
        auto it = j.find("children");
        if (it == j.end() || !it->is_array()) {
          fail(path, "Sequence needs a 'children' array");
          break;
        }
        for (std::size_t i = 0; i < it->size(); ++i) {
          out.children.push_back(node((*it)[i], path + ".children[" + std::to_string(i) + "]"));
        }
        break;
      }
      case NodeKind::Loop: {
        const bool has_count = j.contains("count");
        const bool has_while = j.contains("while");
        if (has_count == has_while) fail(path, "Loop needs exactly one of 'count' and 'while'");
        if (has_count) {
          const auto& c = j.at("count");
          if (!c.is_number_integer()) {
            fail(path + ".count", "count must be an integer");
          } else {
            const auto n = c.get<std::int64_t>();
            if (n < 1 || n > kMaxLoopCount) {
              fail(path + ".count", "count must lie in [1, " + std::to_string(kMaxLoopCount) + "]");
            }
            out.count = static_cast<int>(std::clamp<std::int64_t>(n, 0, kMaxLoopCount + 1));
          }
        }
        if (has_while) {
          if (!j.at("while").is_string()) {
            fail(path + ".while", "while must name a predicate");
          } else {
            out.while_predicate = j.at("while").get<std::string>();
          }
        }
        if (!j.contains("body")) {
          fail(path, "Loop needs a 'body'");
        } else {
          out.children.push_back(node(j.at("body"), path + ".body"));
        }
        break;
      }
      case NodeKind::BehaviourCall: {
        auto it = j.find("behaviour");
        if (it == j.end() || !it->is_string()) {
          fail(path, "BehaviourCall needs a string 'behaviour'");
        } else {
          out.behaviour = it->get<std::string>();
        }
        if (auto p = j.find("params"); p != j.end()) {
          if (!p->is_object()) {
            fail(path + ".params", "params must be an object");
          } else {
            for (const auto& [name, value] : p->items()) {
              if (auto v = internal::param_from_json(value)) {
                out.params[name] = *v;
              } else {
                fail(path + ".params." + name, "unsupported parameter value");
              }
            }
          }
        }
        break;
      }
      case NodeKind::SkillCall: {
        auto it = j.find("skill");
        if (it == j.end() || !it->is_string()) {
          fail(path, "SkillCall needs a string 'skill'");
        } else {
          out.skill = it->get<std::string>();
        }
        break;
      }
      case NodeKind::HardwareDecl: {
        auto it = j.find("hardware");
        if (it == j.end() || !it->is_array()) {
          fail(path, "HardwareDecl needs a 'hardware' array");
          break;
        }
        for (const auto& h : *it) {
          if (h.is_string()) {
            out.hardware.push_back(h.get<std::string>());
          } else {
            fail(path + ".hardware", "hardware names must be strings");
          }
        }
        break;
      }
      case NodeKind::WaypointMotion: {
        auto it = j.find("waypoints");
        if (it == j.end() || !it->is_array() || it->empty()) {
          fail(path, "WaypointMotion needs a non-empty 'waypoints' array");
          break;
        }
        for (std::size_t i = 0; i < it->size(); ++i) {
          const auto& w = (*it)[i];
          if (!w.is_array() || w.size() != 3 || !w[0].is_number() || !w[1].is_number() ||
              !w[2].is_number()) {
            fail(path + ".waypoints[" + std::to_string(i) + "]", "waypoint must be [x, y, z]");
            continue;
          }
          out.waypoints.push_back({w[0].get<double>(), w[1].get<double>(), w[2].get<double>()});
        }
        break;
      }
    }
    return out;
  }

 private:
  void fail(const std::string& path, std::string message) {
    diagnostics.push_back({path, std::move(message)});
  }

};

json node_json(const ProgramNode& node) {
  json j;
  j["kind"] = std::string(to_string(node.kind));
  switch (node.kind) {
    case NodeKind::Sequence: {
      j["children"] = json::array();
      for (const auto& child : node.children) j["children"].push_back(node_json(child));
      break;
    }
    case NodeKind::Loop:
      if (node.count) j["count"] = *node.count;
      if (node.while_predicate) j["while"] = *node.while_predicate;
      if (!node.children.empty()) j["body"] = node_json(node.children.front());
      break;
    case NodeKind::BehaviourCall: {
      j["behaviour"] = node.behaviour;
      j["params"] = internal::params_to_json(node.params);
      break;
    }
    case NodeKind::SkillCall:
      j["skill"] = node.skill;
      break;
    case NodeKind::HardwareDecl:
      j["hardware"] = node.hardware;
      break;
    case NodeKind::WaypointMotion: {
      j["waypoints"] = json::array();
      for (const auto& w : node.waypoints) j["waypoints"].push_back({w.x, w.y, w.z});
      break;
    }
  }
  return j;
}

std::string summarize(const std::vector<Diagnostic>& diagnostics) {
  std::string message = "invalid program";
  for (const auto& d : diagnostics) message += "; " + d.path + ": " + d.message;
  return message;
}

}  // namespace

std::string_view to_string(NodeKind kind) { return kKindNames[static_cast<int>(kind)]; }

ProgramError::ProgramError(std::vector<Diagnostic> diagnostics)
    : ValidationError(summarize(diagnostics)), diagnostics_(std::move(diagnostics)) {}

ProgramAst parse_program(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ProgramError(std::vector<Diagnostic>{{"", std::string("malformed JSON: ") + e.what()}});
  }
  if (!doc.is_object()) throw ProgramError(std::vector<Diagnostic>{{"", "program document must be an object"}});
  Parser parser;
  ProgramAst ast;
  auto version = doc.find("ast_version");
  if (version == doc.end() || !version->is_number_integer()) {
    parser.diagnostics.push_back({"ast_version", "missing integer 'ast_version'"});
  } else if (version->get<int>() != kAstVersion) {
    parser.diagnostics.push_back(
        {"ast_version", "unsupported ast_version " + std::to_string(version->get<int>())});
  }
  if (!doc.contains("root")) {
    parser.diagnostics.push_back({"root", "missing 'root'"});
  } else {
    ast.root = parser.node(doc.at("root"), "root");
  }
  if (!parser.diagnostics.empty()) throw ProgramError(std::move(parser.diagnostics));
  return ast;
}

std::string serialize_program(const ProgramAst& ast) {
  json doc;
  doc["ast_version"] = ast.version;
  doc["root"] = node_json(ast.root);
  return doc.dump();
}

ProgramNode sequence(std::vector<ProgramNode> children) {
  ProgramNode n;
  n.kind = NodeKind::Sequence;
  n.children = std::move(children);
  return n;
}

ProgramNode loop(int count, ProgramNode body) {
  ProgramNode n;
  n.kind = NodeKind::Loop;
  n.count = count;
  n.children.push_back(std::move(body));
  return n;
}

ProgramNode loop_while(std::string predicate, ProgramNode body) {
  ProgramNode n;
  n.kind = NodeKind::Loop;
  n.while_predicate = std::move(predicate);
  n.children.push_back(std::move(body));
  return n;
}

ProgramNode call(std::string behaviour, ParamMap params) {
  ProgramNode n;
  n.kind = NodeKind::BehaviourCall;
  n.behaviour = std::move(behaviour);
  n.params = std::move(params);
  return n;
}

ProgramNode skill_call(std::string skill) {
  ProgramNode n;
  n.kind = NodeKind::SkillCall;
  n.skill = std::move(skill);
  return n;
}

ProgramNode hardware_decl(std::vector<std::string> names) {
  ProgramNode n;
  n.kind = NodeKind::HardwareDecl;
  n.hardware = std::move(names);
  return n;
}

ProgramNode waypoints(std::vector<Vec3> poses) {
  ProgramNode n;
  n.kind = NodeKind::WaypointMotion;
  n.waypoints = std::move(poses);
  return n;
}

}  // namespace skillforge::skills
