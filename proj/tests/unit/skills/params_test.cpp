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

#include "skillforge/common.hpp"
#include "skillforge/skills/params.hpp"

namespace skillforge::skills {
namespace {

ParamSchema schema() {
  ParamSpec goal{"goal", ParamType::Vec2, true, {}, std::nullopt};
  ParamSpec stiffness{"stiffness", ParamType::Real, false, {}, ParamValue(1.0)};
  ParamSpec angle{"angle", ParamType::Enum, false, {"-90", "90"}, std::nullopt};
  ParamSpec reps{"reps", ParamType::Int, false, {}, std::nullopt};
  return {goal, stiffness, angle, reps};
}

TEST(Params, TypeNames) {
  for (auto t : {ParamType::Int, ParamType::Real, ParamType::Vec2, ParamType::Enum}) {
    EXPECT_EQ(parse_param_type(to_string(t)), t);
  }
  EXPECT_THROW(parse_param_type("quaternion"), ValidationError);
}

TEST(Params, Conforms) {
  const auto s = schema();
  EXPECT_TRUE(conforms(s[0], Vec2{1, 2}));
  EXPECT_FALSE(conforms(s[0], 1.0));
  EXPECT_TRUE(conforms(s[1], std::int64_t{3}));
  EXPECT_TRUE(conforms(s[2], std::string("90")));
  EXPECT_FALSE(conforms(s[2], std::string("45")));
  EXPECT_FALSE(conforms(s[3], 2.0));
}

TEST(Params, ResolveFillsDefaultsAndWidensInts) {
  const auto out = resolve_params(schema(), {{"goal", Vec2{1, 2}}, {"stiffness", std::int64_t{2}}});
  EXPECT_EQ(std::get<double>(out.at("stiffness")), 2.0);
  EXPECT_FALSE(out.contains("angle"));
  const auto defaults = resolve_params(schema(), {{"goal", Vec2{1, 2}}});
  EXPECT_EQ(get_real(defaults, "stiffness"), std::optional<double>(1.0));
}

TEST(Params, ResolveRejects) {
  EXPECT_THROW(resolve_params(schema(), {}), ValidationError);
  EXPECT_THROW(resolve_params(schema(), {{"goal", Vec2{}}, {"speed", 1.0}}), ValidationError);
  EXPECT_THROW(resolve_params(schema(), {{"goal", 1.0}}), ValidationError);
  EXPECT_THROW(resolve_params(schema(), {{"goal", Vec2{}}, {"angle", std::string("45")}}), ValidationError);
}

TEST(Params, FormatIsSortedAndStable) {
  EXPECT_EQ(format_params({{"b", std::int64_t{2}}, {"a", std::string("x")}}), "a=x,b=2");
  EXPECT_EQ(format_params({{"goal", Vec2{5, 2}}}), "goal=(5 2)");
  EXPECT_EQ(format_params({}), "");
}

TEST(Params, Getters) {
  const ParamMap p = {{"v", Vec2{1, 2}}, {"r", 0.5}, {"e", std::string("Deg0")}};
  EXPECT_EQ(get_vec2(p, "v"), std::optional<Vec2>(Vec2{1, 2}));
  EXPECT_FALSE(get_vec2(p, "r"));
  EXPECT_FALSE(get_real(p, "missing"));
  EXPECT_EQ(get_enum(p, "e"), std::optional<std::string>("Deg0"));
}

}  // namespace
}  // namespace skillforge::skills
