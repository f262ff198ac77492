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
#include <optional>
#include <string>

#include "skillforge/diagnosis/diagnose.hpp"

namespace skillforge::service {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string store_path = "skillforge.db";
  std::string catalog_path;  // empty: the compiled-in scenario catalog

  int episodes = 500;
  double reward = 1.0;
  double damping = 0.0;
  std::uint64_t play_seed = 42;

  int budget = 15;
  int training_runs = diagnosis::kDefaultTrainingRuns;
  std::uint64_t diagnosis_seed = 7;
  diagnosis::DiagnosisConstants constants;
};

inline constexpr const char* kConfigEnv = "SKILLFORGE_CONFIG";

// Unknown keys are rejected so typos do not silently fall back to defaults.
ServiceConfig parse_config(const std::string& json_text);
ServiceConfig load_config(const std::string& path);

// An explicit path wins, then $SKILLFORGE_CONFIG; nullopt means defaults.
std::optional<std::string> resolve_config_path(const std::optional<std::string>& explicit_path);

}  // namespace skillforge::service
