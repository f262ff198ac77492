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

#include "codec.hpp"

#include "internal/json_params.hpp"

namespace skillforge::service::codec {
namespace {

json call_tree(const std::vector<skills::CallNode>& nodes) {
  json out = json::array();
  for (const auto& n : nodes) out.push_back({{"function", n.function}, {"children", call_tree(n.children)}});
  return out;
}

}  // namespace

json behaviour(const skills::BehaviourDescriptor& d) {
  json params = json::array();
  for (const auto& p : d.parameter_schema) {
    json spec = {{"name", p.name}, {"type", skills::to_string(p.type)}, {"required", p.required}};
    if (!p.enum_values.empty()) spec["enum_values"] = p.enum_values;
    if (p.default_value) spec["default"] = internal::param_to_json(*p.default_value);
    params.push_back(spec);
  }
  return {{"id", d.id},
          {"category", skills::to_string(d.category)},
          {"description", d.description},
          {"required_hardware", d.required_hardware},
          {"parameters", params},
          {"call_tree", call_tree(d.call_tree)},
          {"duration_ticks", d.duration_ticks}};
}

json skill(const skills::Skill& s, const std::set<std::string>& coverage) {
  json doc = {{"id", s.id},
              {"basic_behaviour", s.basic_behaviour ? json(*s.basic_behaviour) : json(nullptr)},
              {"success_predicate", s.success_predicate},
              {"required_hardware", s.required_hardware},
              {"trained", s.trained()},
              {"promoted", s.promoted},
              {"recent_success_rate", s.recent_success_rate()},
              {"coverage", coverage}};
  return doc;
}

json record_summary(const memory::ExecutionRecord& r) {
  return {{"id", r.id},
          {"subject", r.subject},
          {"subject_kind", r.subject_kind},
          {"start_tick", r.start_tick},
          {"end_tick", r.end_tick},
          {"success", r.success},
          {"hardware", r.hardware_config},
          {"situation", r.situation},
          {"failure", r.failure},
          {"ticks", r.sensor.ticks},
          {"channels", r.sensor.channels.size()}};
}

json sensor(const memory::SensorMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t t = 0; t < m.ticks; ++t) row.push_back(m.at(i, t));
    rows.push_back(row);
  }
  return {{"channels", m.channels}, {"ticks", m.ticks}, {"tick_length", m.tick_length}, {"values", rows}};
}

json profile(const memory::CallProfileMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t t = 0; t < m.ticks; ++t) row.push_back(m.at(i, t));
    rows.push_back(row);
  }
  return {{"functions", m.functions}, {"ticks", m.ticks}, {"counts", rows}};
}

json doa(const skills::DoaRecord& d) {
  json probed = json::array();
  for (const auto& [situation, success] : d.probed) {
    probed.push_back({{"situation", situation.describe()}, {"success", success}});
  }
  return {{"skill", d.skill}, {"probed", probed}, {"successes", d.successes()}};
}

json episode(const playing::EpisodeReport& e) {
  return {{"episode", e.episode},         {"situation", e.situation},   {"path", e.path},
          {"path_labels", e.path_labels}, {"outcome", e.outcome},       {"running_mean", e.running_mean},
          {"record_id", e.record_id}};
}

json step(const diagnosis::SessionStep& s) {
  json doc = {{"skill", s.skill},
              {"success", s.success},
              {"record_id", s.record_id},
              {"t_fail", s.fail_time ? json(s.fail_time->tick) : json(nullptr)},
              {"posterior", blame(s.posterior)}};
  if (s.fail_time) doc["low_confidence"] = s.fail_time->low_confidence;
  return doc;
}

json blame(const diagnosis::BlameDistribution& b) {
  json ranking = json::array();
  for (const auto& [h, p] : b.ranking()) ranking.push_back({{"hypothesis", h}, {"probability", p}});
  return {{"argmax", b.argmax()}, {"ranking", ranking}};
}

sim::FaultSpec fault(const json& j) {
  sim::FaultSpec spec;
  if (j.is_string()) {
    spec.function_id = j.get<std::string>();
    return spec;
  }
  spec.function_id = j.at("function").get<std::string>();
  if (j.contains("mode")) spec.mode = sim::parse_fault_mode(j["mode"].get<std::string>());
  spec.trigger_probability = j.value("probability", 1.0);
  spec.sensor_bias = j.value("bias", 0.0);
  return spec;
}

playing::ActionRef action(const json& j) {
  if (j.is_string()) {
    const auto text = j.get<std::string>();
    if (text == skills::kVoidBehaviour) return playing::ActionRef::none();
    if (text.rfind("skill:", 0) == 0) return playing::ActionRef::skill(text.substr(6));
    return playing::ActionRef::behaviour(text);
  }
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "void") return playing::ActionRef::none();
  if (kind == "skill") return playing::ActionRef::skill(j.at("id").get<std::string>());
  if (kind != "behaviour") throw ValidationError("unknown action kind '" + kind + "'");
  skills::ParamMap params;
  if (j.contains("params")) {
    for (auto it = j["params"].begin(); it != j["params"].end(); ++it) {
      auto v = internal::param_from_json(it.value());
      if (!v) throw ValidationError("unsupported parameter '" + it.key() + "'");
      params[it.key()] = *v;
    }
  }
  return playing::ActionRef::behaviour(j.at("id").get<std::string>(), std::move(params));
}

playing::PlayingSetup setup(const json& j) {
  playing::PlayingSetup s;
  s.scenario = sim::parse_scenario(j.at("scenario").get<std::string>());
  s.sensing_actions = j.at("sensing_actions").get<std::vector<std::string>>();
  for (const auto& a : j.at("preparatory")) s.preparatory.push_back(action(a));
  s.repetitions = j.value("repetitions", s.repetitions);
  s.holdout_fraction = j.value("holdout", s.holdout_fraction);
  return s;
}

}  // namespace skillforge::service::codec
