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
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "skillforge/playing/ecm.hpp"
#include "skillforge/playing/perception.hpp"
#include "skillforge/sim/world.hpp"

namespace skillforge::skills {
class Engine;
}

namespace skillforge::playing {

// Runs every sensing action on every situation `repetitions` times from a
// fresh world and labels each recording with the world's ground truth.
HapticDatabase collect_haptic_database(skills::Engine& engine, const std::string& skill,
                                       const std::vector<std::string>& sensing_actions,
                                       const std::vector<sim::Situation>& situations,
                                       int repetitions, Rng& rng);

// What a skill needs before it can play.
struct PlayingSetup {
  sim::ScenarioId scenario = sim::ScenarioId::Book;
  std::vector<std::string> sensing_actions;
  std::vector<ActionRef> preparatory;
  int repetitions = 10;
  double holdout_fraction = 0.2;
};

// Setups for the trainable skills of the default catalog.
std::optional<PlayingSetup> default_playing_setup(std::string_view skill);

struct Preparation {
  HapticDatabase database;
  PerceptualModel model;
  Ecm ecm;
};

// Stage one: haptic database, classifiers and the untrained ECM.
Preparation prepare_playing(skills::Engine& engine, const std::string& skill,
                            const PlayingSetup& setup, Rng& rng);

struct EpisodeReport {
  int episode = 0;  // 1-based
  std::string situation;
  std::vector<std::size_t> path;
  std::vector<std::string> path_labels;
  bool outcome = false;
  double running_mean = 0.0;
  std::int64_t record_id = 0;  // 0 when no store is attached
};

struct PlayResult {
  Ecm ecm;
  std::vector<EpisodeReport> episodes;

  double trailing_success(std::size_t window) const;
  // episode,outcome,running_mean
  std::string curve_csv() const;
};

using EpisodeCallback = std::function<void(const EpisodeReport&, const Ecm&)>;

// Stage two: sample a situation of `config.sampler` uniformly, walk, update.
// The trained ECM and model are stored with the skill at the end.
PlayResult play(skills::Engine& engine, const std::string& skill, Ecm ecm,
                const PerceptualModel& model, const PlayConfig& config,
                const EpisodeCallback& on_episode = {});

}  // namespace skillforge::playing
