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

#include "skillforge/memory/recording.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace skillforge::memory {

RecordingSession::RecordingSession(std::vector<std::shared_ptr<const sim::HardwareHandle>> handles,
                                   const sim::SensorModel& model, Rng& rng)
    : handles_(std::move(handles)), model_(&model), rng_(&rng) {
  for (const auto& handle : handles_) {
    row_offsets_.push_back(channels_.size());
    auto names = handle->row_names();
    channels_.insert(channels_.end(), names.begin(), names.end());
  }
}

std::size_t RecordingSession::column_for(std::int64_t tick) {
  if (!open_) throw ValidationError("no open recording session");
  if (columns_.empty()) first_tick_ = tick;
  const auto index = tick - first_tick_;
  const auto size = static_cast<std::int64_t>(columns_.size());
  if (index < size - 1 || index > size) {
    throw ValidationError("snapshot tick " + std::to_string(tick) + " is not the current or next tick");
  }
  if (index == size) {
    columns_.emplace_back(channels_.size(), std::numeric_limits<double>::quiet_NaN());
  }
  return static_cast<std::size_t>(index);
}

void RecordingSession::record_snapshot(const sim::HardwareHandle& handle, const sim::WorldState& world,
                                       std::int64_t tick, double bias) {
  auto it = std::find_if(handles_.begin(), handles_.end(),
                         [&](const auto& h) { return h->name == handle.name; });
  if (it == handles_.end()) throw ValidationError("hardware '" + handle.name + "' not part of session");
  const std::size_t column = column_for(tick);
  std::vector<double> values;
  model_->sample(handle, world, *rng_, bias, values);
  const std::size_t offset = row_offsets_[static_cast<std::size_t>(it - handles_.begin())];
  std::copy(values.begin(), values.end(), columns_[column].begin() + static_cast<std::ptrdiff_t>(offset));
}

void RecordingSession::record_tick(const sim::WorldState& world, std::int64_t tick, double bias) {
  column_for(tick);
  for (const auto& handle : handles_) record_snapshot(*handle, world, tick, bias);
}

SensorMatrix RecordingSession::matrix() const {
  SensorMatrix m(channels_, columns_.size());
  for (std::size_t t = 0; t < columns_.size(); ++t) {
    for (std::size_t r = 0; r < channels_.size(); ++r) {
      const double v = columns_[t][r];
      if (std::isnan(v)) {
        throw ValidationError("missing sensor cell for '" + channels_[r] + "' at tick " + std::to_string(t));
      }
      m.at(r, t) = v;
    }
  }
  return m;
}

}  // namespace skillforge::memory
