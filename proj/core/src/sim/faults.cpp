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

#include "skillforge/sim/faults.hpp"

#include "skillforge/common.hpp"

namespace skillforge::sim {

void FunctionRegistry::add(std::string id, std::string component) {
  if (index_.contains(id)) throw ConflictError("function '" + id + "' already registered");
  index_.emplace(id, std::make_pair(ids_.size(), std::move(component)));
  ids_.push_back(std::move(id));
}

bool FunctionRegistry::contains(std::string_view id) const { return index_.find(id) != index_.end(); }

std::size_t FunctionRegistry::index_of(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw NotFoundError("unknown function '" + std::string(id) + "'");
  return it->second.first;
}

const std::string& FunctionRegistry::component(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw NotFoundError("unknown function '" + std::string(id) + "'");
  return it->second.second;
}

std::string_view to_string(FaultMode mode) {
  return mode == FaultMode::FailHard ? "FailHard" : "DegradeSensors";
}

FaultMode parse_fault_mode(std::string_view text) {
  if (text == "FailHard") return FaultMode::FailHard;
  if (text == "DegradeSensors") return FaultMode::DegradeSensors;
  throw ValidationError("unknown fault mode '" + std::string(text) + "'");
}

void FaultRegistry::inject(FaultSpec spec) {
  if (!functions_->contains(spec.function_id)) {
    throw NotFoundError("cannot inject fault: unknown function '" + spec.function_id + "'");
  }
  if (!(spec.trigger_probability >= 0.0 && spec.trigger_probability <= 1.0)) {
    throw ValidationError("trigger probability must lie in [0, 1]");
  }
  std::lock_guard lock(mutex_);
  faults_.push_back(std::move(spec));
}

void FaultRegistry::clear() {
  std::lock_guard lock(mutex_);
  faults_.clear();
}

std::vector<FaultSpec> FaultRegistry::active() const {
  std::lock_guard lock(mutex_);
  return faults_;
}

}  // namespace skillforge::sim
