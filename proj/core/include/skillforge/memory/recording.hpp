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
#include <memory>
#include <vector>

#include "skillforge/common.hpp"
#include "skillforge/memory/matrix.hpp"
#include "skillforge/sim/hardware.hpp"
#include "skillforge/sim/sensor_model.hpp"
#include "skillforge/sim/world.hpp"

namespace skillforge::memory {

// Snapshot monitor for one execution: collects one column of sensor values
// per tick for every handle in use.
class RecordingSession {
 public:
  RecordingSession(std::vector<std::shared_ptr<const sim::HardwareHandle>> handles,
                   const sim::SensorModel& model, Rng& rng);

  // Writes the handle's rows of the column for `tick`. Ticks start at the
  // first recorded tick and may only advance by one.
  void record_snapshot(const sim::HardwareHandle& handle, const sim::WorldState& world,
                       std::int64_t tick, double bias = 0.0);

  // Snapshots every handle; also opens the column when no hardware is in use.
  void record_tick(const sim::WorldState& world, std::int64_t tick, double bias = 0.0);

  void close() { open_ = false; }
  bool is_open() const { return open_; }

  std::size_t ticks() const { return columns_.size(); }
  const std::vector<std::string>& channels() const { return channels_; }

  // Assembles the M x T matrix. Throws ValidationError on unfilled cells.
  SensorMatrix matrix() const;

 private:
  std::size_t column_for(std::int64_t tick);

  std::vector<std::shared_ptr<const sim::HardwareHandle>> handles_;
  std::vector<std::size_t> row_offsets_;
  std::vector<std::string> channels_;
  const sim::SensorModel* model_;
  Rng* rng_;
  std::vector<std::vector<double>> columns_;
  std::int64_t first_tick_ = 0;
  bool open_ = true;
};

}  // namespace skillforge::memory
