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
#include <string>
#include <vector>

#include "skillforge/memory/matrix.hpp"

namespace skillforge::playing {

struct HapticEntry {
  std::string sensing_action;
  std::string label;
  memory::SensorMatrix sensor;
};

// Labelled sensing-action recordings gathered in the first playing stage.
struct HapticDatabase {
  std::string skill;
  std::vector<HapticEntry> entries;

  std::vector<std::string> actions() const;
  std::vector<std::string> labels(const std::string& sensing_action) const;
};

// Per-row mean followed by per-row (population) standard deviation.
std::vector<double> sensing_features(const memory::SensorMatrix& sensor);

// Nearest-centroid classifier over sensing_features.
struct PerceptClassifier {
  std::string sensing_action;
  std::vector<std::string> channels;
  std::vector<std::string> labels;
  std::vector<std::vector<double>> centroids;
  double accuracy = 0.0;
  std::size_t holdout_size = 0;

  // Always returns one of `labels`; ties go to the earlier label.
  const std::string& classify(const memory::SensorMatrix& sensor) const;

  friend bool operator==(const PerceptClassifier&, const PerceptClassifier&) = default;
};

struct PerceptualModel {
  std::map<std::string, PerceptClassifier> classifiers;

  bool has(const std::string& sensing_action) const;
  const PerceptClassifier& classifier(const std::string& sensing_action) const;

  friend bool operator==(const PerceptualModel&, const PerceptualModel&) = default;
};

// Trains one classifier per sensing action. For every label the last
// ceil(n * holdout_fraction) entries are held out for the accuracy estimate.
// Throws ValidationError for a fraction outside (0, 0.5] or an action with
// fewer than two labels.
PerceptualModel train_perceptual_model(const HapticDatabase& database, double holdout_fraction);

}  // namespace skillforge::playing
