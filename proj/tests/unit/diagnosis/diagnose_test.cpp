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

#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "skillforge/common.hpp"
#include "skillforge/diagnosis/diagnose.hpp"
#include "skillforge/skills/catalog.hpp"
#include "skillforge/skills/engine.hpp"

namespace skillforge::diagnosis {
namespace {

class DiagnoseTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    engine_ = new skills::Engine;
    skills::install_default_catalog(*engine_);
    std::vector<std::string> skills;
    for (const auto& [id, situation] : skills::test_situations()) skills.push_back(id);
    models_ = new std::map<std::string, SkillModels>(
        train_models(*engine_, skills, test_world_factory(*engine_), kDefaultTrainingRuns, 7));
  }
  static void TearDownTestSuite() {
    delete models_;
    delete engine_;
  }
  void TearDown() override { engine_->faults().clear(); }

  DiagnosisSession run(int budget, std::uint64_t seed, Selection selection = Selection::InformationGain) {
    DiagnosisConfig config;
    config.budget = budget;
    config.selection = selection;
    Rng rng(seed);
    return diagnose(*engine_, *models_, test_world_factory(*engine_), config, rng);
  }

  static skills::Engine* engine_;
  static std::map<std::string, SkillModels>* models_;
};

skills::Engine* DiagnoseTest::engine_ = nullptr;
std::map<std::string, SkillModels>* DiagnoseTest::models_ = nullptr;

TEST_F(DiagnoseTest, ModelsCoverEveryTestSkill) {
  EXPECT_EQ(models_->size(), skills::test_situations().size());
  for (const auto& [skill, m] : *models_) {
    EXPECT_EQ(m.mom.skill, skill);
    EXPECT_EQ(m.fpf.skill, skill);
    EXPECT_EQ(m.coverage, engine_->coverage(skill));
    EXPECT_FALSE(m.coverage.empty());
    EXPECT_GT(m.mom.ticks, 0u);
  }
}

TEST_F(DiagnoseTest, LocalizesPlanCartesian) {
  engine_->faults().inject({"plan_cartesian", sim::FaultMode::FailHard, 1.0, 0.0});
  const auto session = run(15, 3);
  EXPECT_EQ(session.posterior().argmax(), "plan_cartesian");
  EXPECT_LE(session.steps.size(), 15u);
  EXPECT_EQ(session.prior.size(), engine_->functions().ids().size() + 1);
}

TEST_F(DiagnoseTest, NoFaultWinsWhenNothingIsBroken) {
  const auto session = run(15, 4);
  EXPECT_EQ(session.posterior().argmax(), kNoFault);
  for (const auto& s : session.steps) {
    EXPECT_TRUE(s.success);
    EXPECT_FALSE(s.fail_time.has_value());
  }
}

TEST_F(DiagnoseTest, StopsAtTheCertaintyThreshold) {
  engine_->faults().inject({"plan_cartesian", sim::FaultMode::FailHard, 1.0, 0.0});
  const auto session = run(40, 3);
  ASSERT_FALSE(session.steps.empty());
  EXPECT_EQ(session.remaining(), 40 - static_cast<int>(session.steps.size()));
  for (std::size_t i = 0; i + 1 < session.steps.size(); ++i) EXPECT_LT(session.steps[i].posterior.max(), 0.95);
  if (session.remaining() > 0) {
    EXPECT_GE(session.posterior().max(), 0.95);
  }
}

TEST_F(DiagnoseTest, BudgetMustBePositive) {
  EXPECT_THROW(run(0, 1), ValidationError);
  DiagnosisConfig config;
  Rng rng(1);
  EXPECT_THROW(diagnose(*engine_, {}, test_world_factory(*engine_), config, rng), ValidationError);
}

TEST_F(DiagnoseTest, SameSeedSameSession) {
  engine_->faults().inject({"close_hand", sim::FaultMode::FailHard, 1.0, 0.0});
  EXPECT_EQ(run(15, 9).csv(), run(15, 9).csv());
  EXPECT_EQ(run(15, 9, Selection::Random).csv(), run(15, 9, Selection::Random).csv());
}

TEST_F(DiagnoseTest, CallbackSeesEveryStep) {
  engine_->faults().inject({"plan_cartesian", sim::FaultMode::FailHard, 1.0, 0.0});
  DiagnosisConfig config;
  Rng rng(3);
  std::vector<std::string> seen;
  const auto session = diagnose(*engine_, *models_, test_world_factory(*engine_), config, rng,
                                [&](const SessionStep& s) { seen.push_back(s.skill); });
  ASSERT_EQ(seen.size(), session.steps.size());
  for (std::size_t i = 0; i < seen.size(); ++i) EXPECT_EQ(seen[i], session.steps[i].skill);
}

TEST_F(DiagnoseTest, CsvAndJsonExports) {
  engine_->faults().inject({"plan_cartesian", sim::FaultMode::FailHard, 1.0, 0.0});
  const auto session = run(15, 3);
  std::istringstream csv(session.csv());
  std::string line;
  std::getline(csv, line);
  std::string expected_header = "step,skill,outcome,t_fail";
  for (const auto& h : session.prior.hypotheses()) expected_header += "," + h;
  EXPECT_EQ(line, expected_header);
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    EXPECT_EQ(line.rfind(std::to_string(rows) + "," + session.steps[rows - 1].skill + ",", 0), 0u) << line;
  }
  EXPECT_EQ(rows, session.steps.size());

  const auto doc = nlohmann::json::parse(session.to_json());
  EXPECT_EQ(doc["budget"], 15);
  EXPECT_EQ(doc["argmax"], "plan_cartesian");
  ASSERT_EQ(doc["steps"].size(), session.steps.size());
  for (std::size_t i = 0; i < session.steps.size(); ++i) {
    const auto& s = doc["steps"][i];
    EXPECT_EQ(s["skill"], session.steps[i].skill);
    EXPECT_EQ(s["success"], session.steps[i].success);
    if (session.steps[i].fail_time) {
      EXPECT_EQ(s["t_fail"], session.steps[i].fail_time->tick);
    } else {
      EXPECT_TRUE(s["t_fail"].is_null());
    }
    EXPECT_EQ(s["posterior"].size(), session.prior.size());
  }
  const auto& ranking = doc["ranking"];
  for (std::size_t i = 1; i < ranking.size(); ++i) {
    EXPECT_GE(ranking[i - 1]["probability"].get<double>(), ranking[i]["probability"].get<double>());
  }
}

TEST(BlameReport, DescendingLines) {
  const BlameDistribution b({"a", "b", "c"}, {0.2, 0.5, 0.3});
  EXPECT_EQ(blame_report(b), "b 0.500000\nc 0.300000\na 0.200000\n");
  EXPECT_EQ(blame_report(b, 1), "b 0.500000\n");
}

TEST(TrainModels, Errors) {
  skills::Engine engine;
  skills::install_default_catalog(engine);
  EXPECT_THROW(train_models(engine, {"simple_grasp"}, test_world_factory(engine), 0, 1), ValidationError);
  // Fewer successful runs than the training minimum.
  EXPECT_THROW(train_models(engine, {"simple_grasp"}, test_world_factory(engine), 5, 1), ValidationError);
  EXPECT_THROW(test_world_factory(engine)("no_such_skill", 1), NotFoundError);
}

}  // namespace
}  // namespace skillforge::diagnosis
