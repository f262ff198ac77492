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

#include "skillforge/memory/matrix.hpp"

#include <algorithm>

#include "skillforge/common.hpp"

namespace skillforge::memory {

SensorMatrix::SensorMatrix(std::vector<std::string> channel_names, std::size_t tick_count)
    : channels(std::move(channel_names)), ticks(tick_count), values(channels.size() * tick_count, 0.0) {}

SensorMatrix SensorMatrix::slice(const std::vector<std::string>& names, std::size_t first,
                                 std::size_t last) const {
  if (first > last || last > ticks) throw ValidationError("sensor slice out of range");
  SensorMatrix out(names, last - first);
  out.tick_length = tick_length;
  for (std::size_t r = 0; r < names.size(); ++r) {
    auto it = std::find(channels.begin(), channels.end(), names[r]);
    if (it == channels.end()) throw ValidationError("sensor channel '" + names[r] + "' not recorded");
    const auto src = static_cast<std::size_t>(it - channels.begin());
    for (std::size_t t = first; t < last; ++t) out.at(r, t - first) = at(src, t);
  }
  return out;
}

void SensorMatrix::check_shape() const {
  if (values.size() != channels.size() * ticks) {
    throw ValidationError("sensor matrix has " + std::to_string(values.size()) + " cells, expected " +
                          std::to_string(channels.size() * ticks));
  }
}

CallProfileMatrix::CallProfileMatrix(std::vector<std::string> function_ids, std::size_t tick_count)
    : functions(std::move(function_ids)), ticks(tick_count), counts(functions.size() * tick_count, 0) {}

std::size_t CallProfileMatrix::find(const std::string& function) const {
  return static_cast<std::size_t>(std::find(functions.begin(), functions.end(), function) -
                                  functions.begin());
}

void CallProfileMatrix::check_shape() const {
  if (counts.size() != functions.size() * ticks) {
    throw ValidationError("profile matrix has " + std::to_string(counts.size()) + " cells, expected " +
                          std::to_string(functions.size() * ticks));
  }
}

}  // namespace skillforge::memory
