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

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "skillforge/common.hpp"
#include "skillforge/service/config.hpp"

namespace skillforge::service {
namespace {

namespace fs = std::filesystem;

class EnvGuard {
 public:
  explicit EnvGuard(const char* value) {
    if (const char* old = std::getenv(kConfigEnv)) saved_ = old;
    if (value) {
      setenv(kConfigEnv, value, 1);
    } else {
      unsetenv(kConfigEnv);
    }
  }
  ~EnvGuard() {
    if (saved_) {
      setenv(kConfigEnv, saved_->c_str(), 1);
    } else {
      unsetenv(kConfigEnv);
    }
  }

 private:
  std::optional<std::string> saved_;
};

TEST(Config, DefaultsMatchTheDocumentedConstants) {
  const auto c = parse_config("{}");
  EXPECT_EQ(c.host, "127.0.0.1");
  EXPECT_EQ(c.port, 8080);
  EXPECT_EQ(c.episodes, 500);
  EXPECT_EQ(c.play_seed, 42u);
  EXPECT_EQ(c.budget, 15);
  EXPECT_DOUBLE_EQ(c.reward, 1.0);
  EXPECT_DOUBLE_EQ(c.damping, 0.0);
  EXPECT_DOUBLE_EQ(c.constants.eps_bg, 0.01);
  EXPECT_DOUBLE_EQ(c.constants.beta_low, 0.1);
  EXPECT_DOUBLE_EQ(c.constants.beta_high, 0.9);
  EXPECT_DOUBLE_EQ(c.constants.lambda_t, 5.0);
  EXPECT_DOUBLE_EQ(c.constants.rho, 0.9);
  EXPECT_DOUBLE_EQ(c.constants.rho0, 0.05);
  EXPECT_DOUBLE_EQ(c.constants.certainty, 0.95);
}

TEST(Config, ParsesNestedBlocks) {
  const auto c = parse_config(R"({"host": "0.0.0.0", "port": 9000, "store": "x.db",
      "playing": {"episodes": 50, "reward": 2.0, "damping": 0.1, "seed": 3},
      "diagnosis": {"budget": 8, "training_runs": 12, "seed": 5, "lambda_t": 3.0, "rho0": 0.1}})");
  EXPECT_EQ(c.host, "0.0.0.0");
  EXPECT_EQ(c.port, 9000);
  EXPECT_EQ(c.store_path, "x.db");
  EXPECT_EQ(c.episodes, 50);
  EXPECT_DOUBLE_EQ(c.reward, 2.0);
  EXPECT_DOUBLE_EQ(c.damping, 0.1);
  EXPECT_EQ(c.play_seed, 3u);
  EXPECT_EQ(c.budget, 8);
  EXPECT_EQ(c.training_runs, 12);
  EXPECT_EQ(c.diagnosis_seed, 5u);
  EXPECT_DOUBLE_EQ(c.constants.lambda_t, 3.0);
  EXPECT_DOUBLE_EQ(c.constants.rho0, 0.1);
  EXPECT_DOUBLE_EQ(c.constants.kappa, 1.0);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  EXPECT_THROW(parse_config(R"({"hots": "x"})"), ValidationError);
  EXPECT_THROW(parse_config(R"({"playing": {"episode": 3}})"), ValidationError);
  EXPECT_THROW(parse_config(R"({"diagnosis": {"lambda": 3}})"), ValidationError);
  EXPECT_THROW(parse_config(R"({"port": 70000})"), ValidationError);
  EXPECT_THROW(parse_config(R"({"playing": {"episodes": 0}})"), ValidationError);
  EXPECT_THROW(parse_config(R"({"diagnosis": {"beta_low": 0.95}})"), ValidationError);
  EXPECT_THROW(parse_config(R"({"port": "eighty"})"), ValidationError);
  EXPECT_THROW(parse_config("[1, 2"), ValidationError);
  EXPECT_THROW(parse_config("[]"), ValidationError);
}

TEST(Config, ExplicitPathBeatsEnvironment) {
  {
    EnvGuard env("/from/env.json");
    EXPECT_EQ(resolve_config_path(std::string("/explicit.json")), std::optional<std::string>("/explicit.json"));
    EXPECT_EQ(resolve_config_path(std::nullopt), std::optional<std::string>("/from/env.json"));
  }
  {
    EnvGuard env(nullptr);
    EXPECT_EQ(resolve_config_path(std::nullopt), std::nullopt);
  }
  {
    EnvGuard env("");
    EXPECT_EQ(resolve_config_path(std::nullopt), std::nullopt);
  }
}

TEST(Config, LoadsFromFile) {
  const auto path = fs::temp_directory_path() / "skillforge_config_test.json";
  {
    std::ofstream out(path);
    out << R"({"port": 1234, "diagnosis": {"budget": 4}})";
  }
  const auto c = load_config(path.string());
  EXPECT_EQ(c.port, 1234);
  EXPECT_EQ(c.budget, 4);
  fs::remove(path);
  EXPECT_THROW(load_config(path.string()), NotFoundError);
}

}  // namespace
}  // namespace skillforge::service
