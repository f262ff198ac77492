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

#include <thread>

#include "skillforge/common.hpp"
#include "skillforge/sim/hardware.hpp"

namespace skillforge::sim {
namespace {

TEST(Hardware, DefaultsAndRowNames) {
  HardwareRegistry r;
  HardwareRegistry::register_defaults(r);
  EXPECT_EQ(r.names(), (std::vector<std::string>{"camera", "left_arm", "left_hand", "right_arm", "right_hand"}));
  const auto arm = r.acquire("left_arm");
  EXPECT_EQ(arm->kind, HardwareKind::Arm);
  EXPECT_EQ(arm->row_count(), 6);
  EXPECT_EQ(arm->row_names(), (std::vector<std::string>{"left_arm.pose[0]", "left_arm.pose[1]", "left_arm.pose[2]",
                                                         "left_arm.force[0]", "left_arm.force[1]",
                                                         "left_arm.force[2]"}));
  EXPECT_EQ(r.acquire("right_hand")->row_names(),
            (std::vector<std::string>{"right_hand.aperture[0]", "right_hand.finger_force[0]"}));
}

TEST(Hardware, RepeatedAcquireReturnsSameInstance) {
  HardwareRegistry r;
  HardwareRegistry::register_defaults(r);
  const auto a = r.acquire("camera");
  const auto b = r.acquire("camera");
  EXPECT_EQ(a.get(), b.get());
  EXPECT_EQ(a->instance_id, b->instance_id);
  EXPECT_NE(r.acquire("left_arm")->instance_id, a->instance_id);
}

TEST(Hardware, ConcurrentAcquireYieldsOneInstance) {
  HardwareRegistry r;
  HardwareRegistry::register_defaults(r);
  std::vector<const HardwareHandle*> seen(8);
  std::vector<std::thread> threads;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    threads.emplace_back([&, i] { seen[i] = r.acquire("left_hand").get(); });
  }
  for (auto& t : threads) t.join();
  for (const auto* p : seen) EXPECT_EQ(p, seen.front());
}

TEST(Hardware, Errors) {
  HardwareRegistry r;
  HardwareRegistry::register_defaults(r);
  EXPECT_THROW(r.acquire("tail"), NotFoundError);
  EXPECT_THROW(r.register_hardware("camera", HardwareKind::Camera, {{"object_pose", 3}}), ConflictError);
  EXPECT_FALSE(r.contains("tail"));
}

}  // namespace
}  // namespace skillforge::sim
