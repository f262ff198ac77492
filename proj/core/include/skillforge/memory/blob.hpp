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
#include <span>
#include <vector>

#include "skillforge/memory/matrix.hpp"

namespace skillforge::memory {

// Packed matrix blobs, all integers little-endian:
//
//   "KDMX" | version u8 (=1) | cell width u8 (8: f64, 4: u32)
//   | rows u32 | columns u32
//   | rows x (name length u16, UTF-8 name bytes)
//   | rows x columns cells, row-major
inline constexpr std::uint8_t kBlobVersion = 1;

std::vector<std::uint8_t> encode(const SensorMatrix& matrix);
std::vector<std::uint8_t> encode(const CallProfileMatrix& matrix);

// Throw StorageError on a malformed or mismatched blob.
SensorMatrix decode_sensor(std::span<const std::uint8_t> blob);
CallProfileMatrix decode_profile(std::span<const std::uint8_t> blob);

}  // namespace skillforge::memory
