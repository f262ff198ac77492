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

#include "skillforge/playing/ecm.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <random>
#include <set>

#include "internal/json_params.hpp"
#include "skillforge/playing/perception.hpp"
#include "skillforge/skills/behaviour.hpp"

namespace skillforge::playing {
namespace {

using nlohmann::json;

std::string_view kind_name(ActionRef::Kind kind) {
  switch (kind) {
    case ActionRef::Kind::Void:
      return "void";
    case ActionRef::Kind::Behaviour:
      return "behaviour";
    case ActionRef::Kind::Skill:
      return "skill";
  }
  return "?";
}

ActionRef::Kind parse_kind(const std::string& text) {
  if (text == "void") return ActionRef::Kind::Void;
  if (text == "behaviour") return ActionRef::Kind::Behaviour;
  if (text == "skill") return ActionRef::Kind::Skill;
  throw ValidationError("unknown action kind '" + text + "'");
}

EcmLayer layer_from_int(int layer) {
  if (layer < 1 || layer > 5) throw ValidationError("ECM layer out of range");
  return static_cast<EcmLayer>(layer);
}

}  // namespace

ActionRef ActionRef::behaviour(std::string id, skills::ParamMap params) {
  if (id == skills::kVoidBehaviour) return none();
  return {Kind::Behaviour, std::move(id), std::move(params)};
}

ActionRef ActionRef::skill(std::string id) { return {Kind::Skill, std::move(id), {}}; }

std::string ActionRef::label() const {
  switch (kind) {
    case Kind::Void:
      return skills::kVoidBehaviour;
    case Kind::Behaviour:
      return params.empty() ? id : id + "(" + skills::format_params(params) + ")";
    case Kind::Skill:
      return "skill:" + id;
  }
  return id;
}

Ecm::Ecm(std::string skill, std::vector<Clip> clips, std::vector<Edge> edges, double h_min)
    : skill_(std::move(skill)), clips_(std::move(clips)), edges_(std::move(edges)), h_min_(h_min) {
  index();
}

void Ecm::index() {
  out_.assign(clips_.size(), {});
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (edges_[i].from >= clips_.size() || edges_[i].to >= clips_.size()) {
      throw ValidationError("ECM edge refers to a missing clip");
    }
    out_[edges_[i].from].push_back(i);
  }
}

bool Ecm::is_stochastic(std::size_t clip) const {
  const auto layer = clips_.at(clip).layer;
  return layer == EcmLayer::Root || layer == EcmLayer::Percept;
}

std::vector<std::size_t> Ecm::clips_in(EcmLayer layer) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < clips_.size(); ++i) {
    if (clips_[i].layer == layer) out.push_back(i);
  }
  return out;
}

std::size_t Ecm::sensing_clip(std::string_view action) const {
  for (std::size_t i = 0; i < clips_.size(); ++i) {
    if (clips_[i].layer == EcmLayer::Sensing && clips_[i].sensing_action == action) return i;
  }
  throw NotFoundError("ECM has no sensing action '" + std::string(action) + "'");
}

std::size_t Ecm::percept_clip(std::string_view action, std::string_view percept) const {
  for (std::size_t i = 0; i < clips_.size(); ++i) {
    const auto& c = clips_[i];
    if (c.layer == EcmLayer::Percept && c.sensing_action == action && c.percept == percept) return i;
  }
  throw NotFoundError("ECM has no perceptual state '" + std::string(percept) + "' for '" + std::string(action) + "'");
}

std::size_t Ecm::edge_between(std::size_t from, std::size_t to) const {
  if (from < out_.size()) {
    for (auto e : out_[from]) {
      if (edges_[e].to == to) return e;
    }
  }
  throw ValidationError("no ECM edge " + std::to_string(from) + " -> " + std::to_string(to));
}

double Ecm::probability(std::size_t edge) const {
  const auto& e = edges_.at(edge);
  double total = 0.0;
  for (auto sibling : out_[e.from]) total += edges_[sibling].h;
  return e.h / total;
}

std::vector<double> Ecm::out_probabilities(std::size_t clip) const {
  std::vector<double> out;
  double total = 0.0;
  for (auto e : out_.at(clip)) total += edges_[e].h;
  for (auto e : out_.at(clip)) out.push_back(edges_[e].h / total);
  return out;
}

std::size_t Ecm::sample(std::size_t clip, Rng& rng) const {
  const auto& out = out_.at(clip);
  if (out.empty()) throw ValidationError("clip " + std::to_string(clip) + " has no successors");
  if (out.size() == 1) return edges_[out.front()].to;
  double total = 0.0;
  for (auto e : out) total += edges_[e].h;
  const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
  double acc = 0.0;
  for (auto e : out) {
    acc += edges_[e].h;
    if (u < acc) return edges_[e].to;
  }
  return edges_[out.back()].to;
}

std::size_t Ecm::greedy(std::size_t clip) const {
  const auto& out = out_.at(clip);
  if (out.empty()) throw ValidationError("clip " + std::to_string(clip) + " has no successors");
  std::size_t best = out.front();
  for (auto e : out) {
    if (edges_[e].h > edges_[best].h) best = e;
  }
  return edges_[best].to;
}

void Ecm::validate() const {
  if (clips_.empty() || clips_.front().layer != EcmLayer::Root) throw ValidationError("ECM must start with its root");
  if (!(h_min_ > 0.0) || !std::isfinite(h_min_)) throw ValidationError("h_min must be positive and finite");
  if (clips_in(EcmLayer::Root).size() != 1) throw ValidationError("ECM needs exactly one root clip");
  if (clips_in(EcmLayer::Basic).size() != 1) throw ValidationError("ECM needs exactly one basic clip");
  if (out_.size() != clips_.size()) throw ValidationError("ECM index is stale");

  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : edges_) {
    if (e.from >= clips_.size() || e.to >= clips_.size()) throw ValidationError("ECM edge refers to a missing clip");
    if (static_cast<int>(clips_[e.to].layer) != static_cast<int>(clips_[e.from].layer) + 1) {
      throw ValidationError("ECM edge skips or reverses a layer");
    }
    if (!std::isfinite(e.h) || e.h < h_min_) throw ValidationError("ECM h-value below h_min or not finite");
    if (!seen.insert({e.from, e.to}).second) throw ValidationError("duplicate ECM edge");
  }

  auto connected = [&](std::size_t a, std::size_t b) { return seen.contains({a, b}); };
  const auto sensing = clips_in(EcmLayer::Sensing);
  const auto percepts = clips_in(EcmLayer::Percept);
  const auto preparation = clips_in(EcmLayer::Preparation);
  const auto basic = clips_in(EcmLayer::Basic).front();
  if (sensing.empty() || preparation.empty()) throw ValidationError("ECM needs sensing and preparatory clips");
  for (auto s : sensing) {
    if (!connected(0, s)) throw ValidationError("root does not reach sensing clip " + clips_[s].label);
  }
  for (auto p : percepts) {
    const auto s = sensing_clip(clips_[p].sensing_action);
    if (!connected(s, p)) throw ValidationError("perceptual state " + clips_[p].label + " is unreachable");
    for (auto b : preparation) {
      if (!connected(p, b)) throw ValidationError("missing edge " + clips_[p].label + " -> " + clips_[b].label);
    }
  }
  for (auto e : edges_) {
    if (clips_[e.from].layer == EcmLayer::Sensing && clips_[e.to].sensing_action != clips_[e.from].sensing_action) {
      throw ValidationError("sensing clip leads to a foreign perceptual state");
    }
  }
  for (auto b : preparation) {
    if (!connected(b, basic)) throw ValidationError("preparatory clip " + clips_[b].label + " skips the basic clip");
  }
}

std::string Ecm::to_json() const {
  json doc;
  doc["format_version"] = kFormatVersion;
  doc["skill"] = skill_;
  doc["h_min"] = h_min_;
  json layers = json::array();
  for (int layer = 1; layer <= 5; ++layer) layers.push_back(clips_in(static_cast<EcmLayer>(layer)));
  doc["layers"] = layers;
  doc["clips"] = json::array();
  for (const auto& c : clips_) {
    json clip = {{"layer", static_cast<int>(c.layer)}, {"label", c.label}};
    if (!c.sensing_action.empty()) clip["sensing_action"] = c.sensing_action;
    if (!c.percept.empty()) clip["percept"] = c.percept;
    if (c.layer == EcmLayer::Preparation || c.layer == EcmLayer::Basic) {
      clip["action"] = {{"kind", kind_name(c.action.kind)},
                        {"id", c.action.id},
                        {"params", internal::params_to_json(c.action.params)}};
    }
    doc["clips"].push_back(clip);
  }
  doc["edges"] = json::array();
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    doc["edges"].push_back({{"from", e.from}, {"to", e.to}, {"h", e.h}, {"p", probability(i)}});
  }
  return doc.dump();
}

Ecm Ecm::from_json(std::string_view text) {
  try {
    const auto doc = json::parse(text);
    if (doc.at("format_version").get<int>() != kFormatVersion) {
      throw ValidationError("unsupported ECM format version");
    }
    std::vector<Clip> clips;
    for (const auto& c : doc.at("clips")) {
      Clip clip;
      clip.layer = layer_from_int(c.at("layer").get<int>());
      clip.label = c.at("label").get<std::string>();
      clip.sensing_action = c.value("sensing_action", "");
      clip.percept = c.value("percept", "");
      if (c.contains("action")) {
        const auto& a = c.at("action");
        clip.action.kind = parse_kind(a.at("kind").get<std::string>());
        clip.action.id = a.at("id").get<std::string>();
        for (const auto& [name, value] : a.at("params").items()) {
          auto v = internal::param_from_json(value);
          if (!v) throw ValidationError("unsupported action parameter '" + name + "'");
          clip.action.params[name] = *v;
        }
      }
      clips.push_back(std::move(clip));
    }
    std::vector<Edge> edges;
    for (const auto& e : doc.at("edges")) {
      edges.push_back({e.at("from").get<std::size_t>(), e.at("to").get<std::size_t>(), e.at("h").get<double>()});
    }
    Ecm ecm(doc.at("skill").get<std::string>(), std::move(clips), std::move(edges), doc.at("h_min").get<double>());
    ecm.validate();
    return ecm;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed ECM document: ") + e.what());
  }
}

Ecm build_ecm(const std::string& skill, const std::vector<std::string>& sensing_actions,
              const PerceptualModel& model, const std::vector<ActionRef>& preparatory, const ActionRef& basic) {
  if (sensing_actions.empty()) throw ValidationError("an ECM needs at least one sensing action");
  if (preparatory.empty()) throw ValidationError("an ECM needs at least one preparatory behaviour");
  std::vector<Clip> clips;
  std::vector<Edge> edges;
  const double h = Ecm::kDefaultHMin;
  clips.push_back({EcmLayer::Root, skill, {}, {}, {}});

  std::vector<std::pair<std::size_t, std::vector<std::size_t>>> sensing;
  for (const auto& action : sensing_actions) {
    if (!model.has(action)) throw ValidationError("sensing action '" + action + "' has no trained classifier");
    for (const auto& [clip, percepts] : sensing) {
      if (clips[clip].sensing_action == action) throw ValidationError("duplicate sensing action '" + action + "'");
    }
    const std::size_t s = clips.size();
    clips.push_back({EcmLayer::Sensing, action, action, {}, {}});
    edges.push_back({0, s, h});
    sensing.push_back({s, {}});
  }
  for (auto& [s, percepts] : sensing) {
    const std::string action = clips[s].sensing_action;
    for (const auto& label : model.classifier(action).labels) {
      const std::size_t p = clips.size();
      clips.push_back({EcmLayer::Percept, action + ":" + label, action, label, {}});
      edges.push_back({s, p, h});
      percepts.push_back(p);
    }
  }

  std::vector<ActionRef> actions = preparatory;
  if (std::find(actions.begin(), actions.end(), ActionRef::none()) == actions.end()) {
    actions.push_back(ActionRef::none());
  }
  std::vector<std::size_t> prep;
  for (const auto& action : actions) {
    for (auto b : prep) {
      if (clips[b].action == action) throw ValidationError("duplicate preparatory action '" + action.label() + "'");
    }
    prep.push_back(clips.size());
    clips.push_back({EcmLayer::Preparation, action.label(), {}, {}, action});
  }
  const std::size_t basic_clip = clips.size();
  clips.push_back({EcmLayer::Basic, basic.label(), {}, {}, basic});

  for (const auto& [s, percepts] : sensing) {
    for (auto p : percepts) {
      for (auto b : prep) edges.push_back({p, b, h});
    }
  }
  for (auto b : prep) edges.push_back({b, basic_clip, h});

  Ecm ecm(skill, std::move(clips), std::move(edges), h);
  ecm.validate();
  return ecm;
}

Ecm update(Ecm ecm, const std::vector<std::size_t>& path, bool outcome, const PlayConfig& config) {
  if (!(config.reward > 0.0) || !std::isfinite(config.reward)) throw ValidationError("reward must be positive");
  if (!(config.damping >= 0.0 && config.damping < 1.0)) throw ValidationError("damping must lie in [0, 1)");
  if (path.empty() || path.front() != ecm.root()) throw ValidationError("path does not start at the ECM root");
  std::vector<std::size_t> on_path;
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (path[i] >= ecm.clips().size()) throw ValidationError("path leaves the ECM");
    on_path.push_back(ecm.edge_between(path[i - 1], path[i]));
  }
  auto& edges = ecm.mutable_edges();
  if (outcome) {
    for (auto e : on_path) {
      if (ecm.is_stochastic(edges[e].from)) edges[e].h += config.reward;
    }
  }
  if (config.damping > 0.0) {
    for (auto& e : edges) e.h = std::max(ecm.h_min(), e.h - config.damping * (e.h - ecm.h_min()));
  }
  return ecm;
}

}  // namespace skillforge::playing
