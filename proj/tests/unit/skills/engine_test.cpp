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

#include <algorithm>

#include "skillforge/memory/store.hpp"
#include "skillforge/skills/catalog.hpp"
#include "skillforge/skills/engine.hpp"

namespace skillforge::skills {
namespace {

using sim::ScenarioId;

class EngineTest : public ::testing::Test {
 protected:
  void SetUp() override { install_default_catalog(engine); }

  sim::WorldState flat() const { return engine.catalog().create_world(ScenarioId::Flat, 0); }

  RunResult grasp(std::uint64_t seed) {
    Rng rng(seed);
    return engine.execute_skill("simple_grasp", flat(), rng);
  }

  Engine engine;
};

TEST_F(EngineTest, SimpleGraspShapes) {
  const auto run = grasp(1);
  EXPECT_TRUE(run.record.success);
  EXPECT_TRUE(run.record.failure.empty());
  // move_home, localise_object, cartesian_ptp, close_hand: four five-tick behaviours.
  EXPECT_EQ(run.record.sensor.ticks, 20u);
  EXPECT_EQ(run.record.end_tick - run.record.start_tick, 20);
  EXPECT_EQ(run.record.sensor.rows(), 3u + 6u + 2u);
  EXPECT_EQ(run.record.profile.functions, engine.functions().ids());
  EXPECT_EQ(run.record.hardware_config, (std::set<std::string>{"camera", "left_arm", "left_hand"}));
  EXPECT_EQ(run.world.held_object, std::optional<std::string>("cube"));
}

TEST_F(EngineTest, SameSeedSameRecord) {
  EXPECT_EQ(grasp(9).record, grasp(9).record);
  EXPECT_NE(grasp(9).record.sensor, grasp(10).record.sensor);
}

TEST_F(EngineTest, FailHardAbortsAtTheFaultyCall) {
  engine.faults().inject({"plan_cartesian", sim::FaultMode::FailHard, 1.0, 0.0});
  const auto run = grasp(1);
  EXPECT_FALSE(run.record.success);
  EXPECT_NE(run.record.failure.find("plan_cartesian"), std::string::npos);
  // cartesian_ptp enters plan_cartesian on its second tick, after ten ticks of
  // move_home and localise_object.
  EXPECT_EQ(run.record.sensor.ticks, 12u);
  EXPECT_EQ(run.record.end_tick - run.record.start_tick, 12);
  const auto row = engine.functions().index_of("plan_cartesian");
  EXPECT_EQ(run.record.profile.at(row, 11), 1u);
  const auto close_row = engine.functions().index_of("close_hand");
  for (std::size_t t = 0; t < 12; ++t) EXPECT_EQ(run.record.profile.at(close_row, t), 0u);
}

TEST_F(EngineTest, DormantFaultLeavesExecutionUntouched) {
  const auto clean = grasp(4);
  engine.faults().inject({"plan_cartesian", sim::FaultMode::FailHard, 0.0, 0.0});
  EXPECT_EQ(grasp(4).record, clean.record);
}

TEST_F(EngineTest, DegradeSensorsBiasesFromTriggerOn) {
  const auto clean = grasp(5);
  engine.faults().inject({"close_hand", sim::FaultMode::DegradeSensors, 1.0, 3.0});
  const auto degraded = grasp(5);
  EXPECT_TRUE(degraded.record.success);
  ASSERT_EQ(degraded.record.sensor.ticks, clean.record.sensor.ticks);
  // close_hand is the first leaf of the fourth behaviour, tick 15.
  for (std::size_t r = 0; r < clean.record.sensor.rows(); ++r) {
    for (std::size_t t = 0; t < clean.record.sensor.ticks; ++t) {
      const double shift = degraded.record.sensor.at(r, t) - clean.record.sensor.at(r, t);
      EXPECT_NEAR(shift, t >= 15 ? 3.0 : 0.0, 1e-9) << r << ' ' << t;
    }
  }
}

TEST_F(EngineTest, ProfileCountsActiveInstances) {
  const auto run = grasp(1);
  const auto& p = run.record.profile;
  auto active_ticks = [&](const char* fn) {
    std::vector<std::size_t> out;
    for (std::size_t t = 0; t < p.ticks; ++t) {
      if (p.at(engine.functions().index_of(fn), t) > 0) out.push_back(t);
    }
    return out;
  };
  // Leaves own one tick each, the last leaf of a behaviour takes the rest.
  EXPECT_EQ(active_ticks("read_joint_state"), (std::vector<std::size_t>{0, 10}));
  EXPECT_EQ(active_ticks("estimate_pose"), (std::vector<std::size_t>{8, 9}));
  EXPECT_EQ(active_ticks("read_finger_force"), (std::vector<std::size_t>{16, 17, 18, 19}));
  EXPECT_TRUE(active_ticks("poke_controller").empty());
}

TEST_F(EngineTest, ReentrantExecutionFindsHardwareBusy) {
  BehaviourDescriptor d;
  d.id = "nested_home";
  d.required_hardware = {"left_arm"};
  d.call_tree = {{"execute_trajectory", {}}};
  engine.register_behaviour(d, [this](const sim::WorldState& w, const ParamMap&) {
    Rng inner(1);
    engine.apply_behaviour(w, "move_home", {}, inner);
    return Transition{w};
  });
  Rng rng(1);
  EXPECT_THROW(engine.apply_behaviour(flat(), "nested_home", {}, rng), ConflictError);
  // The lease was released on unwind.
  EXPECT_TRUE(engine.apply_behaviour(flat(), "move_home", {}, rng).success);
}

TEST_F(EngineTest, WhileLoopClearsTower) {
  ProgramAst ast;
  ast.root = sequence({hardware_decl({"left_arm", "left_hand", "camera"}),
                       loop_while("tower_standing", skill_call("pick_and_place"))});
  Rng rng(3);
  const auto run = engine.interpret_program(ast, engine.catalog().instantiate({ScenarioId::Tower, {{"height", "3"}}}, 0),
                                            rng);
  EXPECT_TRUE(run.record.success);
  EXPECT_EQ(run.world.objects.front().height, 0);
  EXPECT_EQ(run.world.placed, 3);
  EXPECT_TRUE(engine.evaluate_success("tower_cleared", run.world));
}

TEST_F(EngineTest, WaypointMotion) {
  ProgramAst ast;
  ast.root = sequence({hardware_decl({"left_arm"}), waypoints({{1, 1, 1}, {2, 8, 4}})});
  Rng rng(1);
  const auto run = engine.interpret_program(ast, flat(), rng);
  EXPECT_TRUE(run.record.success);
  EXPECT_EQ(run.world.arm_pose, (Vec3{2, 8, 4}));
  EXPECT_EQ(run.record.sensor.ticks, 10u);
  EXPECT_EQ(run.record.subject_kind, "program");
}

TEST_F(EngineTest, LoopCountRepeatsBody) {
  ProgramAst ast;
  ast.root = sequence({hardware_decl({"left_arm"}), loop(4, call("move_home"))});
  Rng rng(1);
  EXPECT_EQ(engine.interpret_program(ast, flat(), rng).record.sensor.ticks, 20u);
}

TEST_F(EngineTest, CreateSkillChecks) {
  EXPECT_THROW(engine.create_skill("s", "warp", "hand_empty", {}), NotFoundError);
  EXPECT_THROW(engine.create_skill("s", "move_home", "is_raining", {}), NotFoundError);
  EXPECT_THROW(engine.create_skill("s", "move_home", "hand_empty", {"tail"}), NotFoundError);
  EXPECT_THROW(engine.create_skill("simple_grasp", "move_home", "hand_empty", {}), ConflictError);
  const auto s = engine.create_skill("go_home", std::string(kVoidBehaviour), "arm_at_home", {"left_arm"});
  EXPECT_FALSE(s.basic_behaviour);
  EXPECT_FALSE(s.trained());
}

TEST_F(EngineTest, SkillsForHardwareMatchSubsetOracle) {
  const auto names = engine.hardware().names();
  ASSERT_EQ(names.size(), 5u);
  for (unsigned mask = 0; mask < (1u << names.size()); ++mask) {
    std::set<std::string> config;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (mask & (1u << i)) config.insert(names[i]);
    }
    std::vector<std::string> expected;
    for (const auto& id : engine.skill_ids()) {
      bool all = true;
      for (const auto& h : engine.skill(id).required_hardware) all = all && config.count(h) == 1;
      if (all) expected.push_back(id);
    }
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(engine.list_skills_for_hardware(config), expected) << mask;
  }
}

TEST_F(EngineTest, CoverageIsUnionOfCallTrees) {
  EXPECT_EQ(engine.coverage("simple_grasp"),
            (std::set<std::string>{"read_joint_state", "plan_joint", "forward_kinematics", "execute_trajectory",
                                   "grab_depth_image", "segment_point_cloud", "fit_box", "estimate_pose",
                                   "plan_cartesian", "inverse_kinematics", "check_collision", "close_hand",
                                   "read_finger_force"}));
  EXPECT_TRUE(engine.coverage("tower_disassembly").empty());
  EXPECT_THROW(engine.coverage("flying"), NotFoundError);
}

TEST_F(EngineTest, ExecutionsPersistWhenStoreAttached) {
  memory::Store store(":memory:");
  engine.attach_store(&store);
  const auto run = grasp(2);
  ASSERT_GT(run.record.id, 0);
  EXPECT_EQ(store.fetch_execution(run.record.id), std::optional<memory::ExecutionRecord>(run.record));
}

TEST_F(EngineTest, ProbeDoaOfUntrainedBookGrasp) {
  const auto situations = engine.catalog().enumerate_situations(ScenarioId::Book);
  const auto doa = engine.probe_doa("book_grasping", situations, 0);
  ASSERT_EQ(doa.probed.size(), 4u);
  for (const auto& [situation, success] : doa.probed) {
    EXPECT_EQ(success, situation.attributes.at("orientation") == "Deg0") << situation.describe();
  }
  EXPECT_EQ(doa.successes(), 1u);
  EXPECT_THROW(engine.probe_doa("book_grasping", {situations[0], situations[0]}), ValidationError);
}

TEST_F(EngineTest, ProbeWithoutPersistStoresNothing) {
  memory::Store store(":memory:");
  engine.attach_store(&store);
  engine.probe_doa("simple_grasp", {{ScenarioId::Flat, {}}}, 0, false);
  EXPECT_EQ(store.execution_count(), 0u);
  engine.probe_doa("simple_grasp", {{ScenarioId::Flat, {}}}, 0, true);
  EXPECT_EQ(store.execution_count(), 1u);
}

TEST_F(EngineTest, UntrainedEpisodeIsRejected) {
  Rng rng(1);
  EXPECT_THROW(engine.run_episode("book_grasping", flat(), rng, WalkMode::Greedy), ValidationError);
}

}  // namespace
}  // namespace skillforge::skills
