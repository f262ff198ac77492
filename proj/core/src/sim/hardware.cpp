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

#include "skillforge/sim/hardware.hpp"

#include "skillforge/common.hpp"

namespace skillforge::sim {

std::string_view to_string(HardwareKind kind) {
  switch (kind) {
    case HardwareKind::Arm:
      return "Arm";
    case HardwareKind::Hand:
      return "Hand";
    case HardwareKind::Camera:
      return "Camera";
  }
  return "?";
}

int HardwareHandle::row_count() const {
  int rows = 0;
  for (const auto& channel : sensor_channels) rows += channel.dimensionality;
  return rows;
}

std::vector<std::string> HardwareHandle::row_names() const {
  std::vector<std::string> names;
  for (const auto& channel : sensor_channels) {
    for (int i = 0; i < channel.dimensionality; ++i) {
      names.push_back(name + "." + channel.name + "[" + std::to_string(i) + "]");
    }
  }
  return names;
}

void HardwareRegistry::register_hardware(std::string name, HardwareKind kind,
                                         std::vector<ChannelDescriptor> channels) {
  std::lock_guard lock(mutex_);
  if (entries_.contains(name)) throw ConflictError("hardware '" + name + "' already registered");
  for (const auto& channel : channels) {
    if (channel.dimensionality < 1) throw ValidationError("channel dimensionality must be >= 1");
  }
  entries_.emplace(std::move(name), Entry{kind, std::move(channels), nullptr});
}

bool HardwareRegistry::contains(std::string_view name) const {
  std::lock_guard lock(mutex_);
  return entries_.find(name) != entries_.end();
}

std::vector<std::string> HardwareRegistry::names() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [name, entry] : entries_) out.push_back(name);
  return out;
}

std::shared_ptr<const HardwareHandle> HardwareRegistry::acquire(std::string_view name) {
  std::lock_guard lock(mutex_);
  auto it = entries_.find(name);
  if (it == entries_.end()) throw NotFoundError("unknown hardware '" + std::string(name) + "'");
  auto& entry = it->second;
  if (!entry.live) {
    entry.live = std::make_shared<const HardwareHandle>(
        HardwareHandle{it->first, entry.kind, entry.channels, next_instance_++});
  }
  return entry.live;
}

void HardwareRegistry::register_defaults(HardwareRegistry& registry) {
  const std::vector<ChannelDescriptor> arm = {{"pose", 3}, {"force", 3}};
  const std::vector<ChannelDescriptor> hand = {{"aperture", 1}, {"finger_force", 1}};
  registry.register_hardware("left_arm", HardwareKind::Arm, arm);
  registry.register_hardware("right_arm", HardwareKind::Arm, arm);
  registry.register_hardware("left_hand", HardwareKind::Hand, hand);
  registry.register_hardware("right_hand", HardwareKind::Hand, hand);
  registry.register_hardware("camera", HardwareKind::Camera, {{"object_pose", 3}});
}

}  // namespace skillforge::sim
