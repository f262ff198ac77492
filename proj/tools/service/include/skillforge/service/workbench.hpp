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
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "skillforge/diagnosis/diagnose.hpp"
#include "skillforge/memory/store.hpp"
#include "skillforge/playing/play.hpp"
#include "skillforge/service/config.hpp"
#include "skillforge/skills/engine.hpp"

namespace skillforge::service {

struct PlayRequest {
  std::optional<int> episodes;
  std::optional<std::uint64_t> seed;
  std::optional<double> reward;
  std::optional<double> damping;
  std::optional<playing::PlayingSetup> setup;  // default setup of the skill when absent
};

struct DiagnosisRequest {
  std::optional<int> budget;
  std::optional<std::uint64_t> seed;
  std::optional<sim::FaultSpec> inject;
  diagnosis::Selection selection = diagnosis::Selection::InformationGain;
};

// Engine, catalog and store behind one facade so the CLI and the HTTP service
// run the exact same code paths.
class Workbench {
 public:
  explicit Workbench(ServiceConfig config);

  const ServiceConfig& config() const { return config_; }
  skills::Engine& engine() { return *engine_; }
  memory::Store& store() { return *store_; }

  void save_program(const std::string& id, const skills::ProgramAst& program);
  skills::ProgramAst load_program(const std::string& id) const;

  // World from the situation seeded with `seed`; the same seed drives the
  // engine RNG.
  memory::ExecutionRecord run_program(const skills::ProgramAst& program, const sim::Situation& situation,
                                      std::uint64_t seed, const std::string& subject = "program");

  // Registers the program as a behaviour named after the skill's basic
  // behaviour and creates the skill.
  skills::Skill create_skill(const std::string& id, const skills::ProgramAst& program,
                             const std::string& predicate, std::set<std::string> hardware);

  // Stage one and two of playing; stores the ECM and the success curve.
  playing::PlayResult play(const std::string& skill, const PlayRequest& request,
                           const playing::EpisodeCallback& on_episode = {});

  // Every situation of the skill's scenario (playing setup first, then test
  // situation).
  skills::DoaRecord probe_doa(const std::string& skill, std::optional<sim::ScenarioId> scenario,
                              std::uint64_t seed, bool persist = true);

  // Fault-free models are trained on first use and cached. The injected fault
  // is removed again when the session ends.
  diagnosis::DiagnosisSession diagnose(const DiagnosisRequest& request, const diagnosis::StepCallback& on_step = {});

 private:
  const std::map<std::string, diagnosis::SkillModels>& diagnosis_models();

  ServiceConfig config_;
  std::unique_ptr<sim::ScenarioCatalog> custom_catalog_;
  std::unique_ptr<skills::Engine> engine_;
  std::unique_ptr<memory::Store> store_;
  // Executions run one at a time; the FIFO session queue already orders
  // them, this also covers synchronous callers.
  std::recursive_mutex execution_mutex_;
  std::optional<std::map<std::string, diagnosis::SkillModels>> models_;
};

}  // namespace skillforge::service
