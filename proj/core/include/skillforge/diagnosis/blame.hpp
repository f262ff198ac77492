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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "skillforge/diagnosis/models.hpp"

namespace skillforge::diagnosis {

inline const std::string kNoFault = "no-fault";

// Posterior over the registered functions plus the no-fault hypothesis.
class BlameDistribution {
 public:
  BlameDistribution() = default;
  BlameDistribution(std::vector<std::string> hypotheses, std::vector<double> probabilities);
  // Uniform over `functions` and no-fault.
  static BlameDistribution uniform(const std::vector<std::string>& functions);

  const std::vector<std::string>& hypotheses() const { return hypotheses_; }
  const std::vector<double>& probabilities() const { return p_; }
  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  double of(const std::string& hypothesis) const;

  const std::string& argmax() const;  // first maximum wins
  double max() const;
  double entropy() const;  // nats

  // (hypothesis, probability), descending, ties in hypothesis order.
  std::vector<std::pair<std::string, double>> ranking() const;

  friend bool operator==(const BlameDistribution&, const BlameDistribution&) = default;

 private:
  std::vector<std::string> hypotheses_;
  std::vector<double> p_;
};

struct Observation {
  std::string skill;
  bool success = false;
  std::optional<FailTime> fail_time;  // failed observations only
  memory::CallProfileMatrix profile;
};

// Last tick with a nonzero count, if any.
std::optional<std::size_t> last_active(const memory::CallProfileMatrix& profile,
                                       const std::string& function);

// p(o | hypothesis). Functions missing from the fingerprint contribute no
// profile deviation.
double likelihood(const Observation& o, const std::string& hypothesis, const Fpf* fpf,
                  const DiagnosisConstants& constants = {});

// Posterior proportional to likelihood * prior. Throws ValidationError on a
// size mismatch, a negative likelihood, or an all-zero product.
BlameDistribution blame_update(const BlameDistribution& prior, const std::vector<double>& likelihoods);
BlameDistribution blame_update(const BlameDistribution& prior, const Observation& o, const Fpf* fpf,
                               const DiagnosisConstants& constants = {});

// H(blame) - E[H(posterior)] under the coverage outcome model.
double expected_information_gain(const BlameDistribution& blame, const std::set<std::string>& coverage,
                                 const DiagnosisConstants& constants = {});

// Skill with the largest expected gain; lexicographically smallest id on ties.
// Throws ValidationError when `coverage` is empty.
std::string select_next_skill(const BlameDistribution& blame,
                              const std::map<std::string, std::set<std::string>>& coverage,
                              const DiagnosisConstants& constants = {});

}  // namespace skillforge::diagnosis
