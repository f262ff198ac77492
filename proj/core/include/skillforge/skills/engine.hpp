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
#include <set>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "skillforge/memory/profiling.hpp"
#include "skillforge/memory/store.hpp"
#include "skillforge/sim/faults.hpp"
#include "skillforge/sim/hardware.hpp"
#include "skillforge/sim/predicates.hpp"
#include "skillforge/sim/scenario.hpp"
#include "skillforge/sim/sensor_model.hpp"
#include "skillforge/skills/behaviour.hpp"
#include "skillforge/skills/program.hpp"
#include "skillforge/skills/skill.hpp"

namespace skillforge::skills {

class ExecutionContext;

struct EngineConfig {
  sim::SensorModel sensors;
  std::size_t promotion_window = 50;
  double promotion_threshold = 0.8;
};

struct BehaviourResult {
  sim::WorldState world;
  memory::SensorMatrix sensor;
  memory::CallTrace trace;
  bool success = true;
  std::string failure;
};

struct RunResult {
  sim::WorldState world;
  memory::ExecutionRecord record;
};

enum class WalkMode { Stochastic, Greedy };

struct EpisodeResult {
  std::vector<std::size_t> path;  // ECM clip indices, root first
  bool outcome = false;
  sim::WorldState world;
  memory::ExecutionRecord record;
};

// Behaviour/skill registry, factories and executor. Registries may be read
// concurrently; executions lease their hardware so two live executions never
// share a handle.
class Engine {
 public:
  explicit Engine(const sim::ScenarioCatalog& catalog = sim::ScenarioCatalog::builtin(),
                  EngineConfig config = {});
  ~Engine();

  const sim::ScenarioCatalog& catalog() const { return *catalog_; }
  const EngineConfig& config() const { return config_; }
  sim::HardwareRegistry& hardware() { return hardware_; }
  const sim::HardwareRegistry& hardware() const { return hardware_; }
  sim::FunctionRegistry& functions() { return functions_; }
  const sim::FunctionRegistry& functions() const { return functions_; }
  sim::PredicateRegistry& predicates() { return predicates_; }
  const sim::PredicateRegistry& predicates() const { return predicates_; }
  sim::FaultRegistry& faults() { return faults_; }

  // Executions are persisted to the store when one is attached.
  void attach_store(memory::Store* store) { store_ = store; }
  memory::Store* store() const { return store_; }

  // ---- behaviours --------------------------------------------------------
  void register_behaviour(BehaviourDescriptor descriptor, PrimitiveExecutor executor);
  // Registers a visual program as a composite behaviour; hardware, call tree
  // and duration are derived from the program.
  void register_program_behaviour(std::string id, ProgramAst program, std::string description = {});
  bool has_behaviour(std::string_view id) const;
  BehaviourDescriptor behaviour(std::string_view id) const;
  std::optional<ProgramAst> behaviour_program(std::string_view id) const;
  std::vector<BehaviourDescriptor> palette() const;

  // ---- skills ------------------------------------------------------------
  Skill create_skill(const std::string& name, std::optional<std::string> basic_behaviour,
                     const std::string& predicate, std::set<std::string> hardware);
  bool has_skill(std::string_view id) const;
  Skill skill(std::string_view id) const;
  std::vector<std::string> skill_ids() const;
  void set_training(const std::string& skill, playing::Ecm ecm, playing::PerceptualModel model);
  // Appends playing outcomes and refreshes the promotion flag.
  void note_play_outcomes(const std::string& skill, const std::vector<bool>& outcomes);

  // Skills whose required hardware is a subset of `config`, sorted by id.
  std::vector<std::string> list_skills_for_hardware(const std::set<std::string>& config) const;

  // Static function coverage of a skill: its basic behaviour plus, when
  // trained, every sensing and preparatory action of its ECM.
  std::set<std::string> coverage(std::string_view skill) const;

  // ---- execution ---------------------------------------------------------
  bool evaluate_success(std::string_view predicate, const sim::WorldState& world) const;

  BehaviourResult apply_behaviour(const sim::WorldState& world, std::string_view behaviour,
                                  const ParamMap& params, Rng& rng);

  // Throws ProgramError when the program does not validate.
  RunResult interpret_program(const ProgramAst& program, const sim::WorldState& world, Rng& rng,
                              const std::string& subject = "program", const std::string& situation = {});
  std::vector<Diagnostic> validate_program(const ProgramAst& program) const;

  // Untrained: basic behaviour only. Trained: greedy walk through the ECM.
  RunResult execute_skill(std::string_view skill, const sim::WorldState& world, Rng& rng,
                          const std::string& situation = {});

  // One sensing -> classification -> preparation -> basic episode driven by
  // `ecm` (the skill's own if null).
  EpisodeResult run_episode(std::string_view skill, const sim::WorldState& world, Rng& rng,
                            WalkMode mode, const playing::Ecm* ecm = nullptr,
                            const playing::PerceptualModel* model = nullptr,
                            const std::string& situation = {});

  // Executes the skill once per situation from a fresh seeded world. Probe
  // executions are stored only when `persist` is set.
  DoaRecord probe_doa(std::string_view skill, const std::vector<sim::Situation>& situations,
                      std::uint64_t seed = 0, bool persist = true);

 private:
  friend class ExecutionContext;

  struct BehaviourEntry {
    BehaviourDescriptor descriptor;
    std::variant<PrimitiveExecutor, ProgramAst> impl;
  };

  class Lease;

  std::set<std::string> skill_hardware(const Skill& skill, int depth = 0) const;
  void action_hardware(const playing::ActionRef& action, std::set<std::string>& out, int depth) const;
  void action_coverage(const playing::ActionRef& action, std::set<std::string>& out, int depth) const;
  void check_depth(int depth) const;
  std::vector<CallNode> static_tree(const ProgramNode& node) const;
  int static_duration(const ProgramNode& node) const;
  void collect_hardware(const ProgramNode& node, std::set<std::string>& out) const;
  void validate_node(const ProgramNode& node, const std::string& path,
                     const std::set<std::string>& declared, std::vector<Diagnostic>& out) const;

  void run_behaviour(ExecutionContext& ctx, sim::WorldState& world, const BehaviourEntry& entry,
                     const ParamMap& params) const;
  void run_node(ExecutionContext& ctx, sim::WorldState& world, const ProgramNode& node) const;
  void run_action(ExecutionContext& ctx, sim::WorldState& world, const playing::ActionRef& action) const;
  bool run_skill(ExecutionContext& ctx, sim::WorldState& world, const Skill& skill,
                 WalkMode mode, const playing::Ecm* ecm, const playing::PerceptualModel* model,
                 std::vector<std::size_t>* path) const;
  void run_waypoints(ExecutionContext& ctx, sim::WorldState& world, const ProgramNode& node) const;

  const BehaviourEntry& entry(std::string_view id) const;
  memory::ExecutionRecord finish(ExecutionContext& ctx, const sim::WorldState& start,
                                 const sim::WorldState& end, std::string subject,
                                 std::string kind, bool success, std::string situation, bool persist = true);
  RunResult execute(std::string_view skill, const sim::WorldState& world, Rng& rng, const std::string& situation,
                    bool persist);
  std::vector<std::shared_ptr<const sim::HardwareHandle>> handles_for(
      const std::set<std::string>& names);

  const sim::ScenarioCatalog* catalog_;
  EngineConfig config_;
  sim::HardwareRegistry hardware_;
  sim::FunctionRegistry functions_;
  sim::PredicateRegistry predicates_;
  sim::FaultRegistry faults_;
  memory::Store* store_ = nullptr;

  mutable std::shared_mutex registry_mutex_;
  std::map<std::string, BehaviourEntry, std::less<>> behaviours_;
  std::map<std::string, Skill, std::less<>> skills_;

  std::mutex lease_mutex_;
  std::set<std::string> busy_hardware_;
};

}  // namespace skillforge::skills
