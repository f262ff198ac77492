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

#include <gtest/gtest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <random>

#include "skillforge/common.hpp"
#include "skillforge/diagnosis/diagnose.hpp"
#include "skillforge/diagnosis/models.hpp"
#include "skillforge/skills/catalog.hpp"
#include "skillforge/skills/engine.hpp"

namespace skillforge::diagnosis {
namespace {

const std::vector<std::string> kChannels = {"a", "b", "c"};

double base(std::size_t row, std::size_t t) { return static_cast<double>(row) * 2.0 + 0.25 * static_cast<double>(t); }

memory::ExecutionRecord synthetic(std::size_t ticks, double sigma, Rng& rng) {
  memory::ExecutionRecord r;
  r.subject = "s";
  r.subject_kind = "skill";
  r.success = true;
  r.sensor = memory::SensorMatrix(kChannels, ticks);
  std::normal_distribution<double> noise(0.0, 1.0);
  for (std::size_t row = 0; row < kChannels.size(); ++row) {
    for (std::size_t t = 0; t < ticks; ++t) r.sensor.at(row, t) = base(row, t) + sigma * noise(rng);
  }
  r.profile = memory::CallProfileMatrix({"f", "g"}, ticks);
  for (std::size_t t = 0; t < ticks; ++t) {
    r.profile.at(0, t) = t < ticks / 2 ? 1 : 0;
    r.profile.at(1, t) = t >= ticks / 2 ? 1 : 0;
  }
  return r;
}

std::vector<memory::ExecutionRecord> corpus(std::size_t n, std::size_t ticks, double sigma, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<memory::ExecutionRecord> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(synthetic(ticks, sigma, rng));
  return out;
}

TEST(Mom, IdenticalRecordsGiveTheColumnAndTheFloor) {
  const auto records = corpus(20, 8, 0.0, 1);
  const auto mom = train_mom(records);
  EXPECT_EQ(mom.skill, "s");
  EXPECT_EQ(mom.channels, kChannels);
  ASSERT_EQ(mom.ticks, 8u);
  for (std::size_t t = 0; t < 8; ++t) {
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_DOUBLE_EQ(mom.mean[t * 3 + i], base(i, t));
      EXPECT_DOUBLE_EQ(mom.variance[t * 3 + i], 0.01);
    }
  }
}

TEST(Mom, NeedsTenRecords) {
  EXPECT_THROW(train_mom(corpus(9, 5, 0.5, 1)), ValidationError);
  EXPECT_THROW(train_fpf(corpus(9, 5, 0.5, 1)), ValidationError);
  EXPECT_NO_THROW(train_mom(corpus(10, 5, 0.5, 1)));
}

TEST(Mom, RejectsFailedOrMixedRecords) {
  auto records = corpus(12, 5, 0.5, 1);
  records[3].success = false;
  EXPECT_THROW(train_mom(records), ValidationError);
  records = corpus(12, 5, 0.5, 1);
  records[4].subject = "other";
  EXPECT_THROW(train_mom(records), ValidationError);
  records = corpus(12, 5, 0.5, 1);
  records[5].sensor.channels[0] = "z";
  EXPECT_THROW(train_mom(records), ValidationError);
  records = corpus(12, 5, 0.5, 1);
  records[6].profile.functions[0] = "z";
  EXPECT_THROW(train_fpf(records), ValidationError);
}

// Standard error is 0.5 / sqrt(30) ~ 0.09, so 0.2 holds for ~97% of cells.
TEST(Mom, NoisyMeanWithinTwoStandardErrors) {
  const auto mom = train_mom(corpus(30, 10, 0.5, 3));
  int within = 0;
  for (std::size_t t = 0; t < 10; ++t) {
    for (std::size_t i = 0; i < 3; ++i) {
      const double err = std::abs(mom.mean[t * 3 + i] - base(i, t));
      if (err <= 0.2) ++within;
      EXPECT_LT(err, 0.4);
      EXPECT_GE(mom.variance[t * 3 + i], 0.01);
    }
  }
  EXPECT_GE(within, 27);
}

TEST(Mom, SampleVarianceOracle) {
  const auto records = corpus(15, 4, 0.5, 8);
  const auto mom = train_mom(records);
  for (std::size_t t = 0; t < 4; ++t) {
    for (std::size_t i = 0; i < 3; ++i) {
      double mu = 0.0;
      for (const auto& r : records) mu += r.sensor.at(i, t);
      mu /= 15.0;
      double ss = 0.0;
      for (const auto& r : records) ss += (r.sensor.at(i, t) - mu) * (r.sensor.at(i, t) - mu);
      EXPECT_NEAR(mom.mean[t * 3 + i], mu, 1e-12);
      EXPECT_NEAR(mom.variance[t * 3 + i], std::max(0.01, ss / 14.0), 1e-12);
    }
  }
}

TEST(Mom, ThresholdIsTheChiSquareQuantile) {
  const auto mom = train_mom(corpus(10, 3, 0.5, 1));
  // Reference values of the 0.999 quantile with 1 and 3 degrees of freedom.
  EXPECT_NEAR(mom.tau, 16.266236, 1e-5);
  boost::math::chi_squared one(1.0);
  EXPECT_NEAR(boost::math::quantile(one, 0.999), 10.827566, 1e-5);
}

TEST(Mom, ShorterRecordsArePaddedWithTheirFinalColumn) {
  auto records = corpus(10, 6, 0.0, 1);
  Rng rng(2);
  for (int i = 0; i < 10; ++i) records.push_back(synthetic(4, 0.0, rng));
  const auto mom = train_mom(records);
  ASSERT_EQ(mom.ticks, 6u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_DOUBLE_EQ(mom.mean[5 * 3 + i], (base(i, 5) + base(i, 3)) / 2.0);
    EXPECT_DOUBLE_EQ(mom.mean[2 * 3 + i], base(i, 2));
  }
}

TEST(FailTime, EqualToMeanIsLowConfidenceFinalTick) {
  const auto mom = train_mom(corpus(20, 8, 0.0, 1));
  memory::SensorMatrix m(kChannels, 8);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t t = 0; t < 8; ++t) m.at(i, t) = mom.mean[t * 3 + i];
  }
  const auto ft = estimate_fail_time(mom, m);
  EXPECT_EQ(ft.tick, 7);
  EXPECT_TRUE(ft.low_confidence);
}

TEST(FailTime, EarliestCrossingWins) {
  const auto mom = train_mom(corpus(20, 8, 0.0, 1));
  auto m = corpus(10, 8, 0.0, 1)[0].sensor;
  m.at(1, 3) += 1.0;  // 1 / 0.01 = 100 > tau
  const auto ft = estimate_fail_time(mom, m);
  EXPECT_EQ(ft.tick, 3);
  EXPECT_FALSE(ft.low_confidence);
}

TEST(FailTime, BiasFromTickTwelve) {
  const auto mom = train_mom(corpus(30, 20, 0.5, 5));
  Rng rng(11);
  auto run = synthetic(20, 0.5, rng);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t t = 12; t < 20; ++t) run.sensor.at(i, t) += 5.0;
  }
  const auto ft = estimate_fail_time(mom, run.sensor);
  EXPECT_GE(ft.tick, 12);
  EXPECT_LE(ft.tick, 14);
}

TEST(FailTime, ScoresPastTheHorizonAgainstTheLastTick) {
  const auto mom = train_mom(corpus(20, 4, 0.0, 1));
  memory::SensorMatrix m(kChannels, 6);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t t = 0; t < 6; ++t) m.at(i, t) = base(i, std::min<std::size_t>(t, 3));
  }
  EXPECT_DOUBLE_EQ(mom.score(m, 5), 0.0);
  EXPECT_TRUE(estimate_fail_time(mom, m).low_confidence);
}

TEST(FailTime, Errors) {
  const auto mom = train_mom(corpus(10, 4, 0.5, 1));
  EXPECT_THROW(estimate_fail_time(mom, memory::SensorMatrix({"a", "b"}, 4)), ValidationError);
  EXPECT_THROW(estimate_fail_time(mom, memory::SensorMatrix(kChannels, 0)), ValidationError);
  EXPECT_THROW(estimate_fail_time(Mom{}, memory::SensorMatrix(kChannels, 4)), ValidationError);
}

TEST(Fpf, StatisticsAndDeviation) {
  const auto records = corpus(12, 6, 0.5, 1);
  const auto fpf = train_fpf(records);
  EXPECT_TRUE(fpf.has("f"));
  EXPECT_FALSE(fpf.has("h"));
  ASSERT_EQ(fpf.ticks, 6u);
  for (std::size_t t = 0; t < 6; ++t) {
    EXPECT_DOUBLE_EQ(fpf.mean[t], t < 3 ? 1.0 : 0.0);
    EXPECT_DOUBLE_EQ(fpf.variance[t], 0.01);
  }
  EXPECT_DOUBLE_EQ(fpf.deviation(records[0].profile, "f", 5), 0.0);

  auto odd = records[0].profile;
  odd.at(0, 4) = 1;  // z = 1 / sqrt(0.01) = 10 at tick 4
  EXPECT_NEAR(fpf.deviation(odd, "f", 5), 10.0 / 6.0, 1e-12);
  EXPECT_NEAR(fpf.deviation(odd, "f", 4), 10.0 / 5.0, 1e-12);
  EXPECT_DOUBLE_EQ(fpf.deviation(odd, "f", 3), 0.0);
  EXPECT_DOUBLE_EQ(fpf.deviation(odd, "h", 5), 0.0);
}

// Deterministic sensor degradation on close_hand, which enters at tick 15 of
// simple_grasp.
TEST(FailTime, LocalizesDegradedSensorsInEngineRuns) {
  skills::Engine engine;
  skills::install_default_catalog(engine);
  const auto world = engine.catalog().create_world(sim::ScenarioId::Flat, 0);
  Rng rng(21);
  std::vector<memory::ExecutionRecord> clean;
  for (int i = 0; i < kDefaultTrainingRuns; ++i) clean.push_back(engine.execute_skill("simple_grasp", world, rng).record);
  const auto mom = train_mom(clean);

  engine.faults().inject({"close_hand", sim::FaultMode::DegradeSensors, 1.0, 2.5});
  int hits = 0;
  const int trials = 100;
  for (int i = 0; i < trials; ++i) {
    const auto ft = estimate_fail_time(mom, engine.execute_skill("simple_grasp", world, rng).record.sensor);
    if (ft.tick >= 15 && ft.tick <= 17) ++hits;
  }
  EXPECT_GE(hits, 95);
}

}  // namespace
}  // namespace skillforge::diagnosis
