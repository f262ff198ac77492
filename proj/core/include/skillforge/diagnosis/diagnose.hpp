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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "skillforge/diagnosis/blame.hpp"
#include "skillforge/diagnosis/models.hpp"
#include "skillforge/sim/world.hpp"

namespace skillforge::skills {
class Engine;
}

namespace skillforge::diagnosis {

// Builds the test world for a skill from a seed.
using WorldFactory = std::function<sim::WorldState(const std::string& skill, std::uint64_t seed)>;

// Worlds from the catalog's test situation of each skill.
WorldFactory test_world_factory(const skills::Engine& engine);

struct SkillModels {
  Mom mom;
  Fpf fpf;
  std::set<std::string> coverage;
};

// Executes every skill `runs` times on fault-free worlds and trains its MOM
// and FPF from the successful runs.
std::map<std::string, SkillModels> train_models(skills::Engine& engine, const std::vector<std::string>& skills,
                                                const WorldFactory& worlds, int runs, std::uint64_t seed,
                                                const DiagnosisConstants& constants = {});

// Fault-free executions per skill behind the default models.
inline constexpr int kDefaultTrainingRuns = 100;

enum class Selection { InformationGain, Random };

struct DiagnosisConfig {
  int budget = 15;
  Selection selection = Selection::InformationGain;
  DiagnosisConstants constants;
};

struct SessionStep {
  std::string skill;
  bool success = false;
  std::optional<FailTime> fail_time;
  std::int64_t record_id = 0;
  BlameDistribution posterior;
};

struct DiagnosisSession {
  int budget = 0;
  BlameDistribution prior;
  std::vector<SessionStep> steps;

  int remaining() const { return budget - static_cast<int>(steps.size()); }
  const BlameDistribution& posterior() const { return steps.empty() ? prior : steps.back().posterior; }

  // step,skill,outcome,t_fail,<one column per hypothesis>
  std::string csv() const;
  std::string to_json() const;
};

using StepCallback = std::function<void(const SessionStep&)>;

// select -> execute -> t_fail -> blame update, until the budget is spent or
// the posterior maximum reaches the certainty threshold.
DiagnosisSession diagnose(skills::Engine& engine, const std::map<std::string, SkillModels>& models,
                          const WorldFactory& worlds, const DiagnosisConfig& config, Rng& rng,
                          const StepCallback& on_step = {});

// Hypotheses by descending posterior, one "name probability" line each.
std::string blame_report(const BlameDistribution& blame, std::size_t top = 0);

}  // namespace skillforge::diagnosis
