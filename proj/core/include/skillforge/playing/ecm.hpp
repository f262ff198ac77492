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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "skillforge/common.hpp"
#include "skillforge/skills/params.hpp"

namespace skillforge::playing {

// Something an ECM clip can execute.
struct ActionRef {
  enum class Kind { Void, Behaviour, Skill };

  Kind kind = Kind::Void;
  std::string id;
  skills::ParamMap params;

  static ActionRef none() { return {}; }
  static ActionRef behaviour(std::string id, skills::ParamMap params = {});
  static ActionRef skill(std::string id);

  std::string label() const;
  friend bool operator==(const ActionRef&, const ActionRef&) = default;
};

enum class EcmLayer { Root = 1, Sensing = 2, Percept = 3, Preparation = 4, Basic = 5 };

struct Clip {
  EcmLayer layer = EcmLayer::Root;
  std::string label;
  std::string sensing_action;  // Sensing and Percept clips
  std::string percept;         // Percept clips
  ActionRef action;            // Preparation and Basic clips

  friend bool operator==(const Clip&, const Clip&) = default;
};

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  double h = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct PerceptualModel;

// Episodic and compositional memory: five clip layers, root -> sensing
// action -> perceptual state -> preparatory behaviour -> basic behaviour.
// Root and percept clips are stochastic; a transition is taken with
// probability h / (sum of sibling h).
class Ecm {
 public:
  static constexpr int kFormatVersion = 1;
  static constexpr double kDefaultHMin = 1.0;

  Ecm() = default;
  Ecm(std::string skill, std::vector<Clip> clips, std::vector<Edge> edges,
      double h_min = kDefaultHMin);

  const std::string& skill() const { return skill_; }
  double h_min() const { return h_min_; }
  const std::vector<Clip>& clips() const { return clips_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<Edge>& mutable_edges() { return edges_; }

  std::size_t root() const { return 0; }
  const std::vector<std::size_t>& out_edges(std::size_t clip) const { return out_[clip]; }
  bool is_stochastic(std::size_t clip) const;

  std::vector<std::size_t> clips_in(EcmLayer layer) const;
  std::size_t sensing_clip(std::string_view action) const;
  std::size_t percept_clip(std::string_view action, std::string_view percept) const;
  // Edge index from -> to; throws ValidationError if absent.
  std::size_t edge_between(std::size_t from, std::size_t to) const;

  double probability(std::size_t edge) const;
  std::vector<double> out_probabilities(std::size_t clip) const;

  // Successor clip drawn by edge probability / by largest h (first wins ties).
  std::size_t sample(std::size_t clip, Rng& rng) const;
  std::size_t greedy(std::size_t clip) const;

  // Structural and h-value invariants; throws ValidationError.
  void validate() const;

  std::string to_json() const;
  static Ecm from_json(std::string_view text);

  friend bool operator==(const Ecm&, const Ecm&) = default;

 private:
  void index();

  std::string skill_;
  std::vector<Clip> clips_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> out_;
  double h_min_ = kDefaultHMin;
};

// Full five-layer ECM with every h at h_min. The void action is always added
// to the preparatory layer. Throws ValidationError when a sensing action has
// no classifier or the preparatory set is empty.
Ecm build_ecm(const std::string& skill, const std::vector<std::string>& sensing_actions,
              const PerceptualModel& model, const std::vector<ActionRef>& preparatory,
              const ActionRef& basic);

struct PlayConfig {
  int episodes = 500;
  double reward = 1.0;   // lambda
  double damping = 0.0;  // gamma
  std::uint64_t seed = 42;
  std::string sampler;  // scenario id sampled uniformly over its situations
};

// Projective-simulation update: rewarded stochastic edges on the path gain
// `reward`, then every edge decays towards h_min by `damping`. Throws
// ValidationError if the path does not follow edges of this ECM.
Ecm update(Ecm ecm, const std::vector<std::size_t>& path, bool outcome, const PlayConfig& config);

}  // namespace skillforge::playing
