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

#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace skillforge::sim {

// Instrumented framework functions. Order is registration order and fixes the
// row order of call-profile matrices.
class FunctionRegistry {
 public:
  void add(std::string id, std::string component);
  bool contains(std::string_view id) const;
  std::size_t index_of(std::string_view id) const;
  const std::vector<std::string>& ids() const { return ids_; }
  const std::string& component(std::string_view id) const;

 private:
  std::vector<std::string> ids_;
  std::map<std::string, std::pair<std::size_t, std::string>, std::less<>> index_;
};

enum class FaultMode { FailHard, DegradeSensors };

std::string_view to_string(FaultMode mode);
FaultMode parse_fault_mode(std::string_view text);

struct FaultSpec {
  std::string function_id;
  FaultMode mode = FaultMode::FailHard;
  double trigger_probability = 1.0;
  double sensor_bias = 0.0;  // DegradeSensors only
};

// Shared, mutation-synchronized set of injected faults.
class FaultRegistry {
 public:
  explicit FaultRegistry(const FunctionRegistry& functions) : functions_(&functions) {}

  void inject(FaultSpec spec);
  void clear();
  std::vector<FaultSpec> active() const;

 private:
  const FunctionRegistry* functions_;
  mutable std::mutex mutex_;
  std::vector<FaultSpec> faults_;
};

}  // namespace skillforge::sim
