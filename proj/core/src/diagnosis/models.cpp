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

#include "skillforge/diagnosis/models.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "skillforge/common.hpp"

namespace skillforge::diagnosis {
namespace {

void check_corpus(const std::vector<memory::ExecutionRecord>& records, const DiagnosisConstants& constants) {
  if (records.size() < constants.min_records) {
    throw ValidationError("need at least " + std::to_string(constants.min_records) +
                          " successful executions, got " + std::to_string(records.size()));
  }
  if (!(constants.variance_floor > 0.0)) throw ValidationError("variance floor must be positive");
  for (const auto& r : records) {
    if (!r.success) throw ValidationError("models train on successful executions only");
    if (r.subject != records.front().subject) throw ValidationError("records of different skills mixed");
    if (r.sensor.ticks == 0) throw ValidationError("empty execution in training corpus");
  }
}

// Per-cell mean and sample variance of `rows` x `ticks` cells, each record
// padded with its final column.
template <typename Cell>
void accumulate(const std::vector<memory::ExecutionRecord>& records, std::size_t rows, std::size_t ticks,
                Cell cell, double floor, bool tick_major, std::vector<double>& mean,
                std::vector<double>& variance) {
  const double n = static_cast<double>(records.size());
  mean.assign(rows * ticks, 0.0);
  variance.assign(rows * ticks, 0.0);
  auto at = [&](std::size_t row, std::size_t t) { return tick_major ? t * rows + row : row * ticks + t; };
  for (std::size_t row = 0; row < rows; ++row) {
    for (std::size_t t = 0; t < ticks; ++t) {
      double sum = 0.0;
      for (const auto& r : records) sum += cell(r, row, t);
      const double mu = sum / n;
      double ss = 0.0;
      for (const auto& r : records) {
        const double d = cell(r, row, t) - mu;
        ss += d * d;
      }
      mean[at(row, t)] = mu;
      variance[at(row, t)] = std::max(floor, n > 1.0 ? ss / (n - 1.0) : 0.0);
    }
  }
}

}  // namespace

double Mom::score(const memory::SensorMatrix& sensor, std::size_t tick) const {
  const std::size_t t = std::min(tick, ticks - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < channels.size(); ++i) {
    const double d = sensor.at(i, tick) - mean[t * channels.size() + i];
    sum += d * d / variance[t * channels.size() + i];
  }
  return sum;
}

bool Fpf::has(const std::string& function) const {
  return std::find(functions.begin(), functions.end(), function) != functions.end();
}

double Fpf::deviation(const memory::CallProfileMatrix& profile, const std::string& function,
                      std::size_t last) const {
  const auto it = std::find(functions.begin(), functions.end(), function);
  const std::size_t row = profile.find(function);
  if (it == functions.end() || row == profile.rows() || profile.ticks == 0) return 0.0;
  const std::size_t f = static_cast<std::size_t>(it - functions.begin());
  last = std::min(last, profile.ticks - 1);
  double sum = 0.0;
  for (std::size_t t = 0; t <= last; ++t) {
    const std::size_t c = std::min(t, ticks - 1);
    const double z = (profile.at(row, t) - mean[f * ticks + c]) / std::sqrt(variance[f * ticks + c]);
    sum += std::abs(z);
  }
  return sum / static_cast<double>(last + 1);
}

Mom train_mom(const std::vector<memory::ExecutionRecord>& records, const DiagnosisConstants& constants) {
  check_corpus(records, constants);
  if (!(constants.mom_quantile > 0.0 && constants.mom_quantile < 1.0)) {
    throw ValidationError("MOM quantile must lie in (0, 1)");
  }
  Mom mom;
  mom.skill = records.front().subject;
  mom.channels = records.front().sensor.channels;
  if (mom.channels.empty()) throw ValidationError("MOM needs at least one sensor channel");
  for (const auto& r : records) {
    if (r.sensor.channels != mom.channels) throw ValidationError("sensor channels differ across records");
    mom.ticks = std::max(mom.ticks, r.sensor.ticks);
  }
  accumulate(
      records, mom.channels.size(), mom.ticks,
      [](const memory::ExecutionRecord& r, std::size_t row, std::size_t t) {
        return r.sensor.at(row, std::min(t, r.sensor.ticks - 1));
      },
      constants.variance_floor, true, mom.mean, mom.variance);
  boost::math::chi_squared chi2(static_cast<double>(mom.channels.size()));
  mom.tau = boost::math::quantile(chi2, constants.mom_quantile);
  return mom;
}

Fpf train_fpf(const std::vector<memory::ExecutionRecord>& records, const DiagnosisConstants& constants) {
  check_corpus(records, constants);
  Fpf fpf;
  fpf.skill = records.front().subject;
  fpf.functions = records.front().profile.functions;
  for (const auto& r : records) {
    if (r.profile.functions != fpf.functions) throw ValidationError("profile functions differ across records");
    if (r.profile.ticks == 0) throw ValidationError("empty call profile in training corpus");
    fpf.ticks = std::max(fpf.ticks, r.profile.ticks);
  }
  accumulate(
      records, fpf.functions.size(), fpf.ticks,
      [](const memory::ExecutionRecord& r, std::size_t row, std::size_t t) {
        return static_cast<double>(r.profile.at(row, std::min(t, r.profile.ticks - 1)));
      },
      constants.variance_floor, false, fpf.mean, fpf.variance);
  return fpf;
}

FailTime estimate_fail_time(const Mom& mom, const memory::SensorMatrix& sensor) {
  if (mom.ticks == 0) throw ValidationError("MOM is untrained");
  if (sensor.channels != mom.channels) throw ValidationError("sensor channels do not match the MOM");
  if (sensor.ticks == 0) throw ValidationError("empty sensor matrix");
  for (std::size_t t = 0; t < sensor.ticks; ++t) {
    if (mom.score(sensor, t) > mom.tau) return {static_cast<std::int64_t>(t), false};
  }
  return {static_cast<std::int64_t>(sensor.ticks - 1), true};
}

}  // namespace skillforge::diagnosis
