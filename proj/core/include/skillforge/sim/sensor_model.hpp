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

#include <vector>

#include "skillforge/common.hpp"
#include "skillforge/sim/hardware.hpp"
#include "skillforge/sim/world.hpp"

namespace skillforge::sim {

// Per-tick channel values are a deterministic base derived from the world
// plus i.i.d. Gaussian noise. Sensing actions imprint the inspected object's
// attributes on one primary channel:
//   sliding  -> arm force x = 4 * quarter turns of the object (0/4/8/12)
//   poking   -> arm force z = 3 * stack height, 1 (open) / 6 (closed) lid box
//   pressing -> hand finger force = object width
struct SensorModel {
  double noise_sigma = 0.5;

  static constexpr double kSlideStep = 4.0;
  static constexpr double kPokePerBox = 3.0;
  static constexpr double kPokeLidOpen = 1.0;
  static constexpr double kPokeLidClosed = 6.0;
  static constexpr double kPokeFlat = 2.0;

  static double poke_value(const SimObject& object);
  static double width(const SimObject& object);

  // Noise-free channel values for one handle, in row order.
  std::vector<double> base(const HardwareHandle& handle, const WorldState& world) const;

  // base + noise + bias, appended to `out`.
  void sample(const HardwareHandle& handle, const WorldState& world, Rng& rng, double bias,
              std::vector<double>& out) const;
};

}  // namespace skillforge::sim
