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

#include "skillforge/diagnosis/diagnose.hpp"

#include <json.hpp>
#include <random>
#include <sstream>

#include "skillforge/skills/catalog.hpp"
#include "skillforge/skills/engine.hpp"

namespace skillforge::diagnosis {

WorldFactory test_world_factory(const skills::Engine& engine) {
  const auto* catalog = &engine.catalog();
  auto situations = skills::test_situations();
  return [catalog, situations](const std::string& skill, std::uint64_t seed) {
    const auto it = situations.find(skill);
    if (it == situations.end()) throw NotFoundError("no test situation for skill '" + skill + "'");
    return catalog->instantiate(it->second, seed);
  };
}

std::map<std::string, SkillModels> train_models(skills::Engine& engine, const std::vector<std::string>& skills,
                                                const WorldFactory& worlds, int runs, std::uint64_t seed,
                                                const DiagnosisConstants& constants) {
  if (runs < 1) throw ValidationError("training needs at least one run per skill");
  std::map<std::string, SkillModels> out;
  Rng rng(seed);
  for (const auto& skill : skills) {
    std::vector<memory::ExecutionRecord> successes;
    for (int i = 0; i < runs; ++i) {
      auto run = engine.execute_skill(skill, worlds(skill, rng()), rng);
      if (run.record.success) successes.push_back(std::move(run.record));
    }
    out[skill] = {train_mom(successes, constants), train_fpf(successes, constants), engine.coverage(skill)};
  }
  return out;
}

DiagnosisSession diagnose(skills::Engine& engine, const std::map<std::string, SkillModels>& models,
                          const WorldFactory& worlds, const DiagnosisConfig& config, Rng& rng,
                          const StepCallback& on_step) {
  if (config.budget < 1) throw ValidationError("diagnosis budget must be at least 1");
  if (models.empty()) throw ValidationError("no trained skills to test");
  std::map<std::string, std::set<std::string>> coverage;
  std::vector<std::string> ids;
  for (const auto& [skill, m] : models) {
    coverage[skill] = m.coverage;
    ids.push_back(skill);
  }

  DiagnosisSession session;
  session.budget = config.budget;
  session.prior = BlameDistribution::uniform(engine.functions().ids());
  BlameDistribution blame = session.prior;
  while (session.remaining() > 0 && blame.max() < config.constants.certainty) {
    std::string skill;
    if (config.selection == Selection::InformationGain) {
      skill = select_next_skill(blame, coverage, config.constants);
    } else {
      skill = ids[std::uniform_int_distribution<std::size_t>(0, ids.size() - 1)(rng)];
    }
    const auto& m = models.at(skill);
    auto run = engine.execute_skill(skill, worlds(skill, rng()), rng);

    Observation o;
    o.skill = skill;
    o.success = run.record.success;
    o.profile = run.record.profile;
    if (!o.success) o.fail_time = estimate_fail_time(m.mom, run.record.sensor);
    blame = blame_update(blame, o, &m.fpf, config.constants);

    session.steps.push_back({skill, o.success, o.fail_time, run.record.id, blame});
    if (on_step) on_step(session.steps.back());
  }
  return session;
}

std::string DiagnosisSession::csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "step,skill,outcome,t_fail";
  for (const auto& h : prior.hypotheses()) out << ',' << h;
  out << '\n';
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    out << i + 1 << ',' << s.skill << ',' << (s.success ? "success" : "failure") << ',';
    if (s.fail_time) out << s.fail_time->tick;
    for (double p : s.posterior.probabilities()) out << ',' << p;
    out << '\n';
  }
  return out.str();
}

std::string DiagnosisSession::to_json() const {
  using nlohmann::json;
  auto dist = [](const BlameDistribution& b) {
    json d = json::object();
    for (std::size_t i = 0; i < b.size(); ++i) d[b.hypotheses()[i]] = b[i];
    return d;
  };
  json doc = {{"budget", budget}, {"prior", dist(prior)}, {"steps", json::array()}};
  for (const auto& s : steps) {
    json step = {{"skill", s.skill}, {"success", s.success}, {"record_id", s.record_id},
                 {"t_fail", nullptr}, {"posterior", dist(s.posterior)}};
    if (s.fail_time) {
      step["t_fail"] = s.fail_time->tick;
      step["low_confidence"] = s.fail_time->low_confidence;
    }
    doc["steps"].push_back(step);
  }
  const auto& post = posterior();
  doc["argmax"] = post.argmax();
  doc["ranking"] = json::array();
  for (const auto& [h, p] : post.ranking()) doc["ranking"].push_back({{"hypothesis", h}, {"probability", p}});
  return doc.dump();
}

std::string blame_report(const BlameDistribution& blame, std::size_t top) {
  std::ostringstream out;
  out.precision(6);
  std::size_t n = 0;
  for (const auto& [h, p] : blame.ranking()) {
    if (top != 0 && n++ == top) break;
    out << h << ' ' << std::fixed << p << '\n';
  }
  return out.str();
}

}  // namespace skillforge::diagnosis
