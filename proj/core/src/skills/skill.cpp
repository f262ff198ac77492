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

#include "skillforge/skills/skill.hpp"

#include <algorithm>

namespace skillforge::skills {

double Skill::recent_success_rate() const {
  if (recent_outcomes.empty()) return 0.0;
  const auto wins = std::count(recent_outcomes.begin(), recent_outcomes.end(), true);
  return static_cast<double>(wins) / static_cast<double>(recent_outcomes.size());
}

std::size_t DoaRecord::successes() const {
  return static_cast<std::size_t>(
      std::count_if(probed.begin(), probed.end(), [](const auto& p) { return p.second; }));
}

}  // namespace skillforge::skills
