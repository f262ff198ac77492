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

#include "skillforge/sim/sensor_model.hpp"

namespace skillforge::sim {
namespace {

// The arm not driven by the simulation rests at a fixed pose.
constexpr Vec3 kRestingArm{5.0, 10.0, 5.0};
constexpr double kHandOpenAperture = 3.0;
constexpr double kHoldingForce = 2.0;

const SimObject* primary(const WorldState& world) {
  if (world.localised_object) {
    if (const auto* object = world.find(*world.localised_object)) return object;
  }
  return world.objects.empty() ? nullptr : &world.objects.front();
}

bool is_left(const HardwareHandle& handle) { return handle.name.rfind("left_", 0) == 0; }

}  // namespace

double SensorModel::poke_value(const SimObject& object) {
  switch (object.kind) {
    case ObjectKind::BoxStack:
      return kPokePerBox * object.height;
    case ObjectKind::LidBox:
      return object.open ? kPokeLidOpen : kPokeLidClosed;
    case ObjectKind::Book:
    case ObjectKind::Cube:
      return kPokeFlat;
  }
  return 0.0;
}

double SensorModel::width(const SimObject& object) {
  switch (object.kind) {
    case ObjectKind::Book:
      return 4.0;
    case ObjectKind::BoxStack:
      return 6.0;
    case ObjectKind::LidBox:
      return 5.0;
    case ObjectKind::Cube:
      return 2.0;
  }
  return 0.0;
}

std::vector<double> SensorModel::base(const HardwareHandle& handle, const WorldState& world) const {
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(handle.row_count()));
  const SimObject* object = primary(world);
  for (const auto& channel : handle.sensor_channels) {
    std::vector<double> v(static_cast<std::size_t>(channel.dimensionality), 0.0);
    if (handle.kind == HardwareKind::Arm && channel.name == "pose") {
      const Vec3 pose = is_left(handle) ? world.arm_pose : kRestingArm;
      v = {pose.x, pose.y, pose.z};
    } else if (handle.kind == HardwareKind::Arm && channel.name == "force") {
      if (is_left(handle) && object != nullptr) {
        if (world.contact == ContactMode::Slide) v[0] = kSlideStep * quarter_turns(object->orientation);
        if (world.contact == ContactMode::Poke) v[2] = poke_value(*object);
      }
      if (is_left(handle) && world.held_object) v[2] += kHoldingForce;
    } else if (handle.kind == HardwareKind::Hand && channel.name == "aperture") {
      const bool open = is_left(handle) ? world.hand_open : true;
      v[0] = open ? kHandOpenAperture : 0.0;
    } else if (handle.kind == HardwareKind::Hand && channel.name == "finger_force") {
      if (world.contact == ContactMode::Press && object != nullptr) v[0] = width(*object);
      if (is_left(handle) && world.held_object) v[0] += kHoldingForce;
    } else if (handle.kind == HardwareKind::Camera && channel.name == "object_pose") {
      if (object != nullptr) {
        v = {object->position.x, object->position.y, static_cast<double>(object->height)};
      }
    }
    v.resize(static_cast<std::size_t>(channel.dimensionality), 0.0);
    values.insert(values.end(), v.begin(), v.end());
  }
  return values;
}

void SensorModel::sample(const HardwareHandle& handle, const WorldState& world, Rng& rng,
                         double bias, std::vector<double>& out) const {
  std::normal_distribution<double> noise(0.0, 1.0);
  for (double value : base(handle, world)) {
    // Draw even when noiseless so the random stream does not depend on sigma.
    const double n = noise(rng);
    out.push_back(value + noise_sigma * n + bias);
  }
}

}  // namespace skillforge::sim
