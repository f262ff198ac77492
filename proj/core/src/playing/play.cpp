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

#include "skillforge/playing/play.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "skillforge/skills/catalog.hpp"
#include "skillforge/skills/engine.hpp"

namespace skillforge::playing {

HapticDatabase collect_haptic_database(skills::Engine& engine, const std::string& skill,
                                       const std::vector<std::string>& sensing_actions,
                                       const std::vector<sim::Situation>& situations,
                                       int repetitions, Rng& rng) {
  if (repetitions < 1) throw ValidationError("repetitions must be at least 1");
  if (sensing_actions.empty()) throw ValidationError("no sensing actions to collect");
  if (situations.empty()) throw ValidationError("no situations to collect from");
  for (const auto& action : sensing_actions) {
    if (!engine.has_behaviour(action)) throw NotFoundError("unknown sensing action '" + action + "'");
  }
  HapticDatabase db;
  db.skill = skill;
  for (const auto& action : sensing_actions) {
    for (const auto& situation : situations) {
      for (int rep = 0; rep < repetitions; ++rep) {
        const auto world = engine.catalog().instantiate(situation, rng());
        auto result = engine.apply_behaviour(world, action, {}, rng);
        db.entries.push_back({action, engine.catalog().label_of(world), std::move(result.sensor)});
      }
    }
  }
  return db;
}

std::optional<PlayingSetup> default_playing_setup(std::string_view skill) {
  if (skill == "book_grasping") {
    return PlayingSetup{sim::ScenarioId::Book, {"sliding", "poking"}, skills::book_preparatory_actions()};
  }
  if (skill == "tower_disassembly") {
    return PlayingSetup{sim::ScenarioId::Tower, {"poking"}, skills::tower_preparatory_actions()};
  }
  return std::nullopt;
}

Preparation prepare_playing(skills::Engine& engine, const std::string& skill,
                            const PlayingSetup& setup, Rng& rng) {
  const auto s = engine.skill(skill);
  const auto situations = engine.catalog().enumerate_situations(setup.scenario);
  Preparation out;
  out.database = collect_haptic_database(engine, skill, setup.sensing_actions, situations,
                                         setup.repetitions, rng);
  out.model = train_perceptual_model(out.database, setup.holdout_fraction);
  const auto basic = s.basic_behaviour ? ActionRef::behaviour(*s.basic_behaviour) : ActionRef::none();
  out.ecm = build_ecm(skill, setup.sensing_actions, out.model, setup.preparatory, basic);
  return out;
}

double PlayResult::trailing_success(std::size_t window) const {
  if (episodes.empty() || window == 0) return 0.0;
  const std::size_t n = std::min(window, episodes.size());
  const auto wins = std::count_if(episodes.end() - static_cast<std::ptrdiff_t>(n), episodes.end(),
                                  [](const EpisodeReport& e) { return e.outcome; });
  return static_cast<double>(wins) / static_cast<double>(n);
}

std::string PlayResult::curve_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "episode,outcome,running_mean\n";
  for (const auto& e : episodes) out << e.episode << ',' << (e.outcome ? 1 : 0) << ',' << e.running_mean << '\n';
  return out.str();
}

PlayResult play(skills::Engine& engine, const std::string& skill, Ecm ecm,
                const PerceptualModel& model, const PlayConfig& config,
                const EpisodeCallback& on_episode) {
  if (config.episodes < 1) throw ValidationError("episodes must be at least 1");
  if (config.sampler.empty()) throw ValidationError("playing needs a situation sampler");
  ecm.validate();
  const auto situations = engine.catalog().enumerate_situations(sim::parse_scenario(config.sampler));
  Rng rng(config.seed);
  std::uniform_int_distribution<std::size_t> pick(0, situations.size() - 1);

  PlayResult result;
  std::vector<bool> outcomes;
  int wins = 0;
  for (int episode = 1; episode <= config.episodes; ++episode) {
    const auto& situation = situations[pick(rng)];
    const auto world = engine.catalog().instantiate(situation, rng());
    auto walk = engine.run_episode(skill, world, rng, skills::WalkMode::Stochastic, &ecm, &model,
                                   situation.describe());
    ecm = update(std::move(ecm), walk.path, walk.outcome, config);

    wins += walk.outcome ? 1 : 0;
    outcomes.push_back(walk.outcome);
    EpisodeReport report;
    report.episode = episode;
    report.situation = situation.describe();
    report.path = walk.path;
    for (auto clip : walk.path) report.path_labels.push_back(ecm.clips()[clip].label);
    report.outcome = walk.outcome;
    report.running_mean = static_cast<double>(wins) / episode;
    report.record_id = walk.record.id;
    if (on_episode) on_episode(report, ecm);
    result.episodes.push_back(std::move(report));
  }
  engine.set_training(skill, ecm, model);
  engine.note_play_outcomes(skill, outcomes);
  result.ecm = std::move(ecm);
  return result;
}

}  // namespace skillforge::playing
