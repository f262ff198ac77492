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

#include "skillforge/common.hpp"
#include "skillforge/memory/recording.hpp"
#include "skillforge/sim/scenario.hpp"

namespace skillforge::memory {
namespace {

class RecordingTest : public ::testing::Test {
 protected:
  void SetUp() override {
    sim::HardwareRegistry::register_defaults(registry);
    model.noise_sigma = 0.0;
    world = sim::ScenarioCatalog::builtin().create_world(sim::ScenarioId::Flat, 0);
  }

  sim::HardwareRegistry registry;
  sim::SensorModel model;
  sim::WorldState world;
  Rng rng{1};
};

TEST_F(RecordingTest, ColumnsFollowTicks) {
  RecordingSession session({registry.acquire("camera"), registry.acquire("left_hand")}, model, rng);
  EXPECT_EQ(session.channels().size(), 5u);
  for (std::int64_t t = 10; t < 14; ++t) session.record_tick(world, t);
  const auto m = session.matrix();
  EXPECT_EQ(m.ticks, 4u);
  EXPECT_EQ(m.rows(), 5u);
  EXPECT_DOUBLE_EQ(m.at(0, 2), 3.0);  // cube x
  EXPECT_DOUBLE_EQ(m.at(3, 0), 3.0);  // open aperture
}

TEST_F(RecordingTest, TickMayNotSkipOrRewind) {
  RecordingSession session({registry.acquire("camera")}, model, rng);
  session.record_tick(world, 0);
  session.record_tick(world, 1);
  EXPECT_THROW(session.record_tick(world, 3), ValidationError);
  EXPECT_THROW(session.record_tick(world, 0), ValidationError);
  session.close();
  EXPECT_THROW(session.record_tick(world, 2), ValidationError);
}

TEST_F(RecordingTest, UnfilledCellsAndForeignHardware) {
  RecordingSession session({registry.acquire("camera"), registry.acquire("left_arm")}, model, rng);
  session.record_snapshot(*registry.acquire("camera"), world, 0);
  EXPECT_THROW(session.matrix(), ValidationError);
  EXPECT_THROW(session.record_snapshot(*registry.acquire("right_arm"), world, 0), ValidationError);
}

TEST_F(RecordingTest, EmptySessionStillCountsTicks) {
  RecordingSession session({}, model, rng);
  session.record_tick(world, 0);
  session.record_tick(world, 1);
  EXPECT_EQ(session.matrix().ticks, 2u);
  EXPECT_EQ(session.matrix().rows(), 0u);
}

TEST(SensorMatrix, SliceAndShape) {
  SensorMatrix m({"a", "b", "c"}, 4);
  for (std::size_t i = 0; i < m.values.size(); ++i) m.values[i] = static_cast<double>(i);
  const auto s = m.slice({"c", "a"}, 1, 3);
  EXPECT_EQ(s.channels, (std::vector<std::string>{"c", "a"}));
  EXPECT_EQ(s.values, (std::vector<double>{9, 10, 1, 2}));
  EXPECT_THROW(m.slice({"z"}, 0, 1), ValidationError);
  EXPECT_THROW(m.slice({"a"}, 3, 5), ValidationError);
  m.values.pop_back();
  EXPECT_THROW(m.check_shape(), ValidationError);
}

}  // namespace
}  // namespace skillforge::memory
