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
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "skillforge/playing/ecm.hpp"
#include "skillforge/playing/perception.hpp"
#include "skillforge/sim/world.hpp"

namespace skillforge::skills {

// A basic behaviour paired with a success predicate. Once trained, the ECM
// and perceptual model drive sensing and preparation before the basic
// behaviour runs.
struct Skill {
  std::string id;
  std::optional<std::string> basic_behaviour;  // empty: the void behaviour
  std::string success_predicate;
  std::set<std::string> required_hardware;
  std::optional<playing::Ecm> ecm;
  std::optional<playing::PerceptualModel> perception;
  bool promoted = false;
  std::vector<bool> recent_outcomes;  // playing outcomes, oldest first

  bool trained() const { return ecm.has_value() && perception.has_value(); }
  double recent_success_rate() const;
};

struct DoaRecord {
  std::string skill;
  std::vector<std::pair<sim::Situation, bool>> probed;

  std::size_t successes() const;
};

}  // namespace skillforge::skills
