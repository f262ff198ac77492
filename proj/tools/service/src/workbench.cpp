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

#include "skillforge/service/workbench.hpp"

#include <fstream>
#include <sstream>

#include "skillforge/skills/catalog.hpp"

namespace skillforge::service {
namespace {

struct FaultGuard {
  sim::FaultRegistry& faults;
  ~FaultGuard() { faults.clear(); }
};

}  // namespace

Workbench::Workbench(ServiceConfig config) : config_(std::move(config)) {
  const sim::ScenarioCatalog* catalog = &sim::ScenarioCatalog::builtin();
  if (!config_.catalog_path.empty()) {
    std::ifstream in(config_.catalog_path);
    if (!in) throw NotFoundError("cannot read scenario catalog '" + config_.catalog_path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    custom_catalog_ = std::make_unique<sim::ScenarioCatalog>(sim::ScenarioCatalog::from_json(text.str()));
    catalog = custom_catalog_.get();
  }
  engine_ = std::make_unique<skills::Engine>(*catalog);
  skills::install_default_catalog(*engine_);
  store_ = std::make_unique<memory::Store>(config_.store_path);
  engine_->attach_store(store_.get());
}

void Workbench::save_program(const std::string& id, const skills::ProgramAst& program) {
  if (id.empty()) throw ValidationError("program id must not be empty");
  store_->put_document("program", id, skills::serialize_program(program));
}

skills::ProgramAst Workbench::load_program(const std::string& id) const {
  const auto body = store_->get_document("program", id);
  if (!body) throw NotFoundError("no program '" + id + "'");
  return skills::parse_program(*body);
}

memory::ExecutionRecord Workbench::run_program(const skills::ProgramAst& program, const sim::Situation& situation,
                                               std::uint64_t seed, const std::string& subject) {
  std::lock_guard lock(execution_mutex_);
  const auto world = engine_->catalog().instantiate(situation, seed);
  Rng rng(seed);
  return engine_->interpret_program(program, world, rng, subject, situation.describe()).record;
}

skills::Skill Workbench::create_skill(const std::string& id, const skills::ProgramAst& program,
                                      const std::string& predicate, std::set<std::string> hardware) {
  const std::string behaviour = id + "_basic";
  engine_->register_program_behaviour(behaviour, program, "basic behaviour of " + id);
  return engine_->create_skill(id, behaviour, predicate, std::move(hardware));
}

playing::PlayResult Workbench::play(const std::string& skill, const PlayRequest& request,
                                    const playing::EpisodeCallback& on_episode) {
  std::lock_guard lock(execution_mutex_);
  auto setup = request.setup ? request.setup : playing::default_playing_setup(skill);
  if (!setup) throw ValidationError("skill '" + skill + "' has no playing setup");
  engine_->skill(skill);
  playing::PlayConfig pc;
  pc.episodes = request.episodes.value_or(config_.episodes);
  pc.reward = request.reward.value_or(config_.reward);
  pc.damping = request.damping.value_or(config_.damping);
  pc.seed = request.seed.value_or(config_.play_seed);
  pc.sampler = std::string(sim::to_string(setup->scenario));

  Rng rng(pc.seed);
  auto prep = playing::prepare_playing(*engine_, skill, *setup, rng);
  auto result = playing::play(*engine_, skill, std::move(prep.ecm), prep.model, pc, on_episode);
  store_->put_document("ecm", skill, result.ecm.to_json());
  store_->put_document("curve", skill, result.curve_csv());
  return result;
}

skills::DoaRecord Workbench::probe_doa(const std::string& skill, std::optional<sim::ScenarioId> scenario,
                                       std::uint64_t seed, bool persist) {
  std::lock_guard lock(execution_mutex_);
  if (!scenario) {
    if (auto setup = playing::default_playing_setup(skill)) {
      scenario = setup->scenario;
    } else {
      const auto situations = skills::test_situations();
      const auto it = situations.find(skill);
      if (it == situations.end()) throw ValidationError("no scenario known for skill '" + skill + "'");
      scenario = it->second.scenario;
    }
  }
  return engine_->probe_doa(skill, engine_->catalog().enumerate_situations(*scenario), seed, persist);
}

const std::map<std::string, diagnosis::SkillModels>& Workbench::diagnosis_models() {
  if (!models_) {
    std::vector<std::string> skills;
    for (const auto& [id, situation] : skills::test_situations()) {
      if (engine_->has_skill(id)) skills.push_back(id);
    }
    models_ = diagnosis::train_models(*engine_, skills, diagnosis::test_world_factory(*engine_),
                                      config_.training_runs, config_.diagnosis_seed, config_.constants);
  }
  return *models_;
}

diagnosis::DiagnosisSession Workbench::diagnose(const DiagnosisRequest& request,
                                                const diagnosis::StepCallback& on_step) {
  std::lock_guard lock(execution_mutex_);
  engine_->faults().clear();
  const auto& models = diagnosis_models();
  FaultGuard guard{engine_->faults()};
  if (request.inject) engine_->faults().inject(*request.inject);

  diagnosis::DiagnosisConfig dc;
  dc.budget = request.budget.value_or(config_.budget);
  dc.selection = request.selection;
  dc.constants = config_.constants;
  Rng rng(request.seed.value_or(config_.diagnosis_seed));
  auto session = diagnosis::diagnose(*engine_, models, diagnosis::test_world_factory(*engine_), dc, rng, on_step);
  store_->put_document("blame", "latest", session.to_json());
  return session;
}

}  // namespace skillforge::service
