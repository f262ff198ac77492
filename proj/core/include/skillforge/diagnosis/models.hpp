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
#include <string>
#include <vector>

#include "skillforge/memory/matrix.hpp"
#include "skillforge/memory/store.hpp"

namespace skillforge::diagnosis {

// Likelihood, selection and training constants, overridable from the
// service configuration.
struct DiagnosisConstants {
  double eps_bg = 0.01;
  double beta_low = 0.1;
  double beta_high = 0.9;
  double lambda_t = 5.0;
  double kappa = 1.0;
  double rho = 0.9;
  double rho0 = 0.05;
  double certainty = 0.95;
  double variance_floor = 0.01;
  double mom_quantile = 0.999;
  std::size_t min_records = 10;
};

// Measurement observation model: independent Gaussian per tick and channel
// over successful executions.
struct Mom {
  std::string skill;
  std::vector<std::string> channels;
  std::size_t ticks = 0;
  std::vector<double> mean;      // tick-major, ticks x channels
  std::vector<double> variance;  // same layout
  double tau = 0.0;

  // Sum of squared standardized deviations of one column; columns past the
  // trained horizon are scored against the last trained tick.
  double score(const memory::SensorMatrix& sensor, std::size_t tick) const;
};

// Functional profiling fingerprint: Gaussian per function and tick over the
// active-instance counts of successful executions.
struct Fpf {
  std::string skill;
  std::vector<std::string> functions;
  std::size_t ticks = 0;
  std::vector<double> mean;      // function-major, functions x ticks
  std::vector<double> variance;  // same layout

  bool has(const std::string& function) const;
  // Mean |z| of the function's counts over ticks [0, last].
  double deviation(const memory::CallProfileMatrix& profile, const std::string& function,
                   std::size_t last) const;
};

// Both throw ValidationError with fewer than `min_records` records, a failed
// record, or records whose channel/function sets differ. Shorter executions
// are padded with their final column.
Mom train_mom(const std::vector<memory::ExecutionRecord>& records,
              const DiagnosisConstants& constants = {});
Fpf train_fpf(const std::vector<memory::ExecutionRecord>& records,
              const DiagnosisConstants& constants = {});

struct FailTime {
  std::int64_t tick = 0;
  bool low_confidence = false;
};

// Earliest tick whose score exceeds tau; otherwise the final tick, flagged
// low-confidence. Throws ValidationError on a channel mismatch.
FailTime estimate_fail_time(const Mom& mom, const memory::SensorMatrix& sensor);

}  // namespace skillforge::diagnosis
