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

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace skillforge {

// All engine randomness flows through this generator so that a seed fully
// determines an execution.
using Rng = std::mt19937_64;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double distance(const Vec2& a, const Vec2& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

inline Vec3 lerp(const Vec3& a, const Vec3& b, double s) {
  return {a.x + (b.x - a.x) * s, a.y + (b.y - a.y) * s, a.z + (b.z - a.z) * s};
}

// Error hierarchy. The service maps these onto HTTP status codes and the CLI
// onto exit codes, so keep the split coarse.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown id of any kind: scenario, behaviour, predicate, hardware, function.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Malformed input: parameter schema violations, bad ASTs, precondition misses.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Duplicate registrations, busy hardware, schema conflicts.
class ConflictError : public Error {
 public:
  using Error::Error;
};

class StorageError : public Error {
 public:
  using Error::Error;
};

}  // namespace skillforge
