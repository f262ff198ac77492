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

#include <map>
#include <string>
#include <vector>

#include "skillforge/sim/world.hpp"
#include "skillforge/skills/engine.hpp"

namespace skillforge::skills {

// The default workbench: five hardware components, 24 instrumented functions,
// the primitive behaviours, and the visual programs and skills built on them.
void install_default_catalog(Engine& engine);

// Programs installed by install_default_catalog, by behaviour id.
ProgramAst simple_grasp_program();
ProgramAst pick_and_place_program();
ProgramAst book_grasp_program();
ProgramAst repeat_pick_and_place_program(int n);
std::string repeat_pick_and_place_id(int n);

// Preparatory actions offered to the playing module for each trainable skill.
std::vector<playing::ActionRef> book_preparatory_actions();
std::vector<playing::ActionRef> tower_preparatory_actions();

// A situation inside each diagnosable skill's domain of applicability; the
// untrained skill succeeds there when nothing is broken.
std::map<std::string, sim::Situation> test_situations();

}  // namespace skillforge::skills
