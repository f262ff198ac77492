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

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "skillforge/sim/scenario.hpp"
#include "skillforge/sim/world.hpp"

namespace skillforge::sim {

using Predicate = std::function<bool(const WorldState&)>;

class PredicateRegistry {
 public:
  void add(std::string id, Predicate predicate);
  bool contains(std::string_view id) const;
  std::vector<std::string> ids() const;

  // Ground truth of a success predicate; pure in `world`.
  bool evaluate(std::string_view id, const WorldState& world) const;

  static PredicateRegistry builtin(const ScenarioCatalog& catalog);

 private:
  std::map<std::string, Predicate, std::less<>> predicates_;
};

}  // namespace skillforge::sim
