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

#include "skillforge/playing/perception.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "skillforge/common.hpp"

namespace skillforge::playing {

std::vector<std::string> HapticDatabase::actions() const {
  std::vector<std::string> out;
  for (const auto& e : entries) {
    if (std::find(out.begin(), out.end(), e.sensing_action) == out.end()) out.push_back(e.sensing_action);
  }
  return out;
}

std::vector<std::string> HapticDatabase::labels(const std::string& sensing_action) const {
  std::set<std::string> seen;
  for (const auto& e : entries) {
    if (e.sensing_action == sensing_action) seen.insert(e.label);
  }
  return {seen.begin(), seen.end()};
}

std::vector<double> sensing_features(const memory::SensorMatrix& sensor) {
  const std::size_t rows = sensor.rows();
  std::vector<double> features(2 * rows, 0.0);
  if (sensor.ticks == 0) return features;
  const double n = static_cast<double>(sensor.ticks);
  for (std::size_t r = 0; r < rows; ++r) {
    double sum = 0.0;
    for (std::size_t t = 0; t < sensor.ticks; ++t) sum += sensor.at(r, t);
    const double mean = sum / n;
    double sq = 0.0;
    for (std::size_t t = 0; t < sensor.ticks; ++t) sq += (sensor.at(r, t) - mean) * (sensor.at(r, t) - mean);
    features[r] = mean;
    features[rows + r] = std::sqrt(sq / n);
  }
  return features;
}

const std::string& PerceptClassifier::classify(const memory::SensorMatrix& sensor) const {
  if (sensor.channels != channels) {
    throw ValidationError("sensor channels do not match the classifier for '" + sensing_action + "'");
  }
  const auto x = sensing_features(sensor);
  std::size_t best = 0;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < centroids.size(); ++k) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d += (x[i] - centroids[k][i]) * (x[i] - centroids[k][i]);
    if (d < best_distance) {
      best_distance = d;
      best = k;
    }
  }
  return labels.at(best);
}

bool PerceptualModel::has(const std::string& sensing_action) const { return classifiers.contains(sensing_action); }

const PerceptClassifier& PerceptualModel::classifier(const std::string& sensing_action) const {
  auto it = classifiers.find(sensing_action);
  if (it == classifiers.end()) throw NotFoundError("no classifier for sensing action '" + sensing_action + "'");
  return it->second;
}

PerceptualModel train_perceptual_model(const HapticDatabase& database, double holdout_fraction) {
  if (!(holdout_fraction > 0.0 && holdout_fraction <= 0.5)) {
    throw ValidationError("holdout fraction must lie in (0, 0.5]");
  }
  PerceptualModel model;
  for (const auto& action : database.actions()) {
    const auto labels = database.labels(action);
    if (labels.size() < 2) {
      throw ValidationError("sensing action '" + action + "' needs at least two situation labels");
    }
    PerceptClassifier c;
    c.sensing_action = action;
    c.labels = labels;

    std::vector<std::vector<const HapticEntry*>> by_label(labels.size());
    for (const auto& e : database.entries) {
      if (e.sensing_action != action) continue;
      const auto k = static_cast<std::size_t>(std::find(labels.begin(), labels.end(), e.label) - labels.begin());
      if (c.channels.empty()) c.channels = e.sensor.channels;
      if (e.sensor.channels != c.channels) {
        throw ValidationError("entries of '" + action + "' disagree on their sensor channels");
      }
      by_label[k].push_back(&e);
    }

    std::vector<const HapticEntry*> holdout;
    std::vector<std::size_t> holdout_label;
    for (std::size_t k = 0; k < labels.size(); ++k) {
      const auto& group = by_label[k];
      const auto n = group.size();
      auto held = static_cast<std::size_t>(std::ceil(static_cast<double>(n) * holdout_fraction));
      // Keep at least one training entry per label.
      if (held >= n) held = n - 1;
      const std::size_t train = n - held;
      std::vector<double> centroid;
      for (std::size_t i = 0; i < train; ++i) {
        const auto f = sensing_features(group[i]->sensor);
        if (centroid.empty()) centroid.assign(f.size(), 0.0);
        for (std::size_t j = 0; j < f.size(); ++j) centroid[j] += f[j];
      }
      for (auto& v : centroid) v /= static_cast<double>(train);
      c.centroids.push_back(std::move(centroid));
      for (std::size_t i = train; i < n; ++i) {
        holdout.push_back(group[i]);
        holdout_label.push_back(k);
      }
    }

    std::size_t correct = 0;
    for (std::size_t i = 0; i < holdout.size(); ++i) {
      if (c.classify(holdout[i]->sensor) == labels[holdout_label[i]]) ++correct;
    }
    c.holdout_size = holdout.size();
    c.accuracy = holdout.empty() ? 0.0 : static_cast<double>(correct) / static_cast<double>(holdout.size());
    model.classifiers.emplace(action, std::move(c));
  }
  return model;
}

}  // namespace skillforge::playing
