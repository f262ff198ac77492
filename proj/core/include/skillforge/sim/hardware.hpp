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

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace skillforge::sim {

enum class HardwareKind { Arm, Hand, Camera };

std::string_view to_string(HardwareKind kind);

struct ChannelDescriptor {
  std::string name;
  int dimensionality = 1;
};

struct HardwareHandle {
  std::string name;
  HardwareKind kind = HardwareKind::Arm;
  std::vector<ChannelDescriptor> sensor_channels;
  std::uint64_t instance_id = 0;

  int row_count() const;
  // One name per sensor row: "<hardware>.<channel>[<component>]".
  std::vector<std::string> row_names() const;
};

// Hardware factory. A name maps to at most one live handle; repeated
// acquisition returns the same instance.
class HardwareRegistry {
 public:
  void register_hardware(std::string name, HardwareKind kind,
                         std::vector<ChannelDescriptor> channels);
  bool contains(std::string_view name) const;
  std::vector<std::string> names() const;

  std::shared_ptr<const HardwareHandle> acquire(std::string_view name);

  // left_arm, right_arm, left_hand, right_hand, camera.
  static void register_defaults(HardwareRegistry& registry);

 private:
  struct Entry {
    HardwareKind kind;
    std::vector<ChannelDescriptor> channels;
    std::shared_ptr<const HardwareHandle> live;
  };

  mutable std::mutex mutex_;
  std::map<std::string, Entry, std::less<>> entries_;
  std::uint64_t next_instance_ = 1;
};

}  // namespace skillforge::sim
