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

#include "skillforge/memory/profiling.hpp"
#include "skillforge/skills/catalog.hpp"
#include "skillforge/skills/engine.hpp"

namespace skillforge::skills {
namespace {

class BehaviourTest : public ::testing::Test {
 protected:
  void SetUp() override { install_default_catalog(engine); }

  sim::WorldState world(sim::Situation s) { return engine.catalog().instantiate(s, 0); }

  Engine engine;
};

TEST_F(BehaviourTest, CallTreeHelpers) {
  const std::vector<CallNode> tree = {{"a", {{"b", {}}, {"c", {{"b", {}}}}}}, {"d", {}}};
  EXPECT_EQ(leaf_count(tree), 3u);
  EXPECT_EQ(flatten(tree), (std::vector<std::string>{"a", "b", "c", "d"}));
}

TEST_F(BehaviourTest, EveryPaletteScheduleIsWellNested) {
  for (const auto& d : engine.palette()) {
    const auto trace = schedule_call_tree(d.call_tree, d.duration_ticks);
    EXPECT_TRUE(memory::is_well_nested(trace)) << d.id;
    for (const auto& e : trace) {
      EXPECT_GE(e.tick, 0) << d.id;
      EXPECT_LT(e.tick, d.duration_ticks) << d.id;
    }
  }
}

TEST_F(BehaviourTest, SensingBehavioursRunTenTicks) {
  for (const char* id : {"sliding", "poking", "pressing"}) {
    EXPECT_EQ(engine.behaviour(id).category, BehaviourCategory::Sensing);
    EXPECT_EQ(engine.behaviour(id).duration_ticks, kSensingTicks);
  }
  EXPECT_EQ(engine.behaviour("move_home").duration_ticks, kMotionTicks);
}

TEST_F(BehaviourTest, SlidingSeparatesOrientations) {
  const double expected[] = {0.0, 4.0, 8.0, 12.0};
  int i = 0;
  for (const char* o : {"Deg0", "Deg90", "Deg180", "Deg270"}) {
    Rng rng(2);
    const auto r = engine.apply_behaviour(world({sim::ScenarioId::Book, {{"orientation", o}}}), "sliding", {}, rng);
    ASSERT_TRUE(r.success);
    ASSERT_EQ(r.sensor.ticks, 10u);
    const auto force = r.sensor.slice({"left_arm.force[0]"}, 0, 10);
    double mean = 0.0;
    for (double v : force.values) mean += v / 10.0;
    EXPECT_NEAR(mean, expected[i++], 0.6);
  }
}

TEST_F(BehaviourTest, VoidTakesOneTickAndNoTime) {
  Rng rng(1);
  const auto w = world({sim::ScenarioId::Flat, {}});
  const auto r = engine.apply_behaviour(w, kVoidBehaviour, {}, rng);
  EXPECT_TRUE(r.success);
  EXPECT_EQ(r.sensor.ticks, 1u);
  EXPECT_EQ(r.world, w);
}

TEST_F(BehaviourTest, InfeasibleTransitionFails) {
  Rng rng(1);
  const auto r = engine.apply_behaviour(world({sim::ScenarioId::Flat, {}}), "place_in_bin", {}, rng);
  EXPECT_FALSE(r.success);
  EXPECT_NE(r.failure.find("nothing to place"), std::string::npos);
  EXPECT_EQ(r.sensor.ticks, 5u);
}

TEST_F(BehaviourTest, ParamsAreValidatedBeforeRunning) {
  Rng rng(1);
  const auto w = world({sim::ScenarioId::Flat, {}});
  EXPECT_THROW(engine.apply_behaviour(w, "joint_ptp", {}, rng), ValidationError);
  EXPECT_THROW(engine.apply_behaviour(w, "rotate_by", {{"angle", std::string("45")}}, rng), ValidationError);
  EXPECT_THROW(engine.apply_behaviour(w, "warp", {}, rng), NotFoundError);
}

TEST_F(BehaviourTest, RotateBy) {
  Rng rng(1);
  const auto r = engine.apply_behaviour(world({sim::ScenarioId::Book, {{"orientation", "Deg90"}}}), "rotate_by",
                                        {{"angle", std::string("-90")}}, rng);
  EXPECT_EQ(r.world.objects.front().orientation, sim::Orientation::Deg0);
  EXPECT_EQ(r.world.clock, kMotionTicks);
}

TEST_F(BehaviourTest, ArmInterpolatesAlongTheMotion) {
  Rng rng(1);
  EngineConfig quiet;
  quiet.sensors.noise_sigma = 0.0;
  Engine e(sim::ScenarioCatalog::builtin(), quiet);
  install_default_catalog(e);
  auto w = e.catalog().create_world(sim::ScenarioId::Flat, 0);
  w.arm_pose = {0.0, 0.0, 5.0};
  const auto r = e.apply_behaviour(w, "move_home", {}, rng);
  const auto x = r.sensor.slice({"left_arm.pose[0]"}, 0, 5).values;
  ASSERT_EQ(x.size(), 5u);
  for (std::size_t k = 0; k < x.size(); ++k) EXPECT_NEAR(x[k], static_cast<double>(k + 1), 1e-12);
}

TEST_F(BehaviourTest, RegistrationChecks) {
  PrimitiveExecutor identity = [](const sim::WorldState& w, const ParamMap&) { return Transition{w}; };
  BehaviourDescriptor d;
  d.id = "wiggle";
  d.required_hardware = {"left_arm"};
  d.call_tree = {{"execute_trajectory", {}}};
  EXPECT_THROW(engine.register_behaviour(d, nullptr), ValidationError);
  auto bad = d;
  bad.required_hardware = {"tail"};
  EXPECT_THROW(engine.register_behaviour(bad, identity), NotFoundError);
  bad = d;
  bad.call_tree = {{"dance", {}}};
  EXPECT_THROW(engine.register_behaviour(bad, identity), NotFoundError);
  bad = d;
  bad.call_tree.clear();
  EXPECT_THROW(engine.register_behaviour(bad, identity), ValidationError);
  bad = d;
  bad.duration_ticks = 0;
  EXPECT_THROW(engine.register_behaviour(bad, identity), ValidationError);
  engine.register_behaviour(d, identity);
  EXPECT_THROW(engine.register_behaviour(d, identity), ConflictError);
  EXPECT_TRUE(engine.has_behaviour("wiggle"));
}

}  // namespace
}  // namespace skillforge::skills
