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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace skillforge::memory {

// M_sigma(s): one row per sensor channel component, one column per tick,
// stored row-major.
struct SensorMatrix {
  std::vector<std::string> channels;
  std::size_t ticks = 0;
  std::vector<double> values;
  double tick_length = 1.0;

  SensorMatrix() = default;
  SensorMatrix(std::vector<std::string> channel_names, std::size_t tick_count);

  std::size_t rows() const { return channels.size(); }
  double at(std::size_t row, std::size_t tick) const { return values[row * ticks + tick]; }
  double& at(std::size_t row, std::size_t tick) { return values[row * ticks + tick]; }

  // Columns [first, last) of the rows named in `names`, in that order.
  SensorMatrix slice(const std::vector<std::string>& names, std::size_t first,
                     std::size_t last) const;

  // Throws ValidationError if the cell count does not match the shape.
  void check_shape() const;

  friend bool operator==(const SensorMatrix&, const SensorMatrix&) = default;
};

// F_sigma(s): number of simultaneously active instances of each function per
// tick.
struct CallProfileMatrix {
  std::vector<std::string> functions;
  std::size_t ticks = 0;
  std::vector<std::uint32_t> counts;

  CallProfileMatrix() = default;
  CallProfileMatrix(std::vector<std::string> function_ids, std::size_t tick_count);

  std::size_t rows() const { return functions.size(); }
  std::uint32_t at(std::size_t row, std::size_t tick) const { return counts[row * ticks + tick]; }
  std::uint32_t& at(std::size_t row, std::size_t tick) { return counts[row * ticks + tick]; }

  // Row index of a function, or rows() if absent.
  std::size_t find(const std::string& function) const;

  void check_shape() const;

  friend bool operator==(const CallProfileMatrix&, const CallProfileMatrix&) = default;
};

}  // namespace skillforge::memory
