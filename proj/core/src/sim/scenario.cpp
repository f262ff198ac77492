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

#include "skillforge/sim/scenario.hpp"

#include <algorithm>
#include <json.hpp>

#include "internal/embedded.hpp"

namespace skillforge::sim {
namespace {

using nlohmann::json;

Vec2 read_vec2(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

void apply_attribute(SimObject& object, const std::string& name, const std::string& value) {
  if (name == "orientation") {
    object.orientation = parse_orientation(value);
  } else if (name == "height") {
    std::size_t used = 0;
    int height = 0;
    try {
      height = std::stoi(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != value.size() || height < 0 || height > kMaxStackHeight) {
      throw ValidationError("invalid height '" + value + "'");
    }
    object.height = height;
  } else if (name == "open") {
    if (value != "true" && value != "false") throw ValidationError("invalid open flag '" + value + "'");
    object.open = value == "true";
  } else {
    throw ValidationError("unknown object attribute '" + name + "'");
  }
}

std::string attribute_value(const SimObject& object, const std::string& name) {
  if (name == "orientation") return std::string(to_string(object.orientation));
  if (name == "height") return std::to_string(object.height);
  if (name == "open") return object.open ? "true" : "false";
  throw ValidationError("unknown object attribute '" + name + "'");
}

}  // namespace

ScenarioCatalog ScenarioCatalog::from_json(std::string_view text) {
  ScenarioCatalog catalog;
  try {
    const json doc = json::parse(text);
    if (doc.value("catalog_version", 0) != 1) throw ValidationError("unsupported catalog version");
    if (doc.contains("bin_position")) catalog.bin_position_ = read_vec2(doc["bin_position"]);
    if (doc.contains("home_pose")) {
      const auto& h = doc["home_pose"];
      catalog.home_pose_ = {h.at(0).get<double>(), h.at(1).get<double>(), h.at(2).get<double>()};
    }
    for (const auto& s : doc.at("scenarios")) {
      ScenarioSpec spec;
      spec.id = parse_scenario(s.at("id").get<std::string>());
      if (s.contains("label_attribute")) spec.label_attribute = s["label_attribute"].get<std::string>();
      for (const auto& o : s.at("objects")) {
        ObjectTemplate object;
        object.id = o.at("id").get<std::string>();
        object.kind = parse_object_kind(o.at("kind").get<std::string>());
        object.position = read_vec2(o.at("position"));
        const json attributes = o.value("attributes", json::object());
        for (auto it = attributes.begin(); it != attributes.end(); ++it) {
          const std::string& name = it.key();
          auto& choices = object.attributes[name];
          for (const auto& v : it.value()) choices.push_back(v.get<std::string>());
          if (choices.empty()) throw ValidationError("attribute '" + name + "' has no values");
          SimObject probe;
          for (const auto& v : choices) apply_attribute(probe, name, v);
        }
        spec.objects.push_back(std::move(object));
      }
      if (spec.objects.empty()) throw ValidationError("scenario without objects");
      spec.predicates = s.value("predicates", std::vector<std::string>{});
      catalog.scenarios_.push_back(std::move(spec));
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed scenario catalog: ") + e.what());
  }
  return catalog;
}

const ScenarioCatalog& ScenarioCatalog::builtin() {
  static const ScenarioCatalog catalog = from_json(embedded::scenario_catalog());
  return catalog;
}

const ScenarioSpec& ScenarioCatalog::scenario(ScenarioId id) const {
  for (const auto& spec : scenarios_) {
    if (spec.id == id) return spec;
  }
  throw NotFoundError("scenario '" + std::string(to_string(id)) + "' not in catalog");
}

WorldState ScenarioCatalog::create_world(ScenarioId id, std::uint64_t seed) const {
  const auto& spec = scenario(id);
  Rng rng(seed);
  WorldState world;
  world.scenario = id;
  world.arm_pose = home_pose_;
  for (const auto& tmpl : spec.objects) {
    SimObject object;
    object.id = tmpl.id;
    object.kind = tmpl.kind;
    object.position = tmpl.position;
    for (const auto& [name, choices] : tmpl.attributes) {
      std::size_t pick = 0;
      if (choices.size() > 1) {
        pick = std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng);
      }
      apply_attribute(object, name, choices[pick]);
    }
    world.objects.push_back(std::move(object));
  }
  return world;
}

WorldState ScenarioCatalog::instantiate(const Situation& situation, std::uint64_t seed) const {
  WorldState world = create_world(situation.scenario, seed);
  const auto& primary = scenario(situation.scenario).objects.front();
  for (const auto& [name, value] : situation.attributes) {
    auto it = primary.attributes.find(name);
    if (it == primary.attributes.end() ||
        std::find(it->second.begin(), it->second.end(), value) == it->second.end()) {
      throw ValidationError("situation " + situation.describe() + " is not instantiable");
    }
    apply_attribute(world.objects.front(), name, value);
  }
  return world;
}

std::vector<Situation> ScenarioCatalog::enumerate_situations(ScenarioId id) const {
  const auto& primary = scenario(id).objects.front();
  std::vector<Situation> out{Situation{id, {}}};
  for (const auto& [name, choices] : primary.attributes) {
    if (choices.size() < 2) continue;
    std::vector<Situation> next;
    for (const auto& partial : out) {
      for (const auto& value : choices) {
        Situation s = partial;
        s.attributes[name] = value;
        next.push_back(std::move(s));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::string ScenarioCatalog::label_of(const WorldState& world) const {
  const auto& spec = scenario(world.scenario);
  if (!spec.label_attribute || world.objects.empty()) return std::string(to_string(spec.id));
  return attribute_value(world.objects.front(), *spec.label_attribute);
}

}  // namespace skillforge::sim
