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

#include <random>

#include "skillforge/common.hpp"
#include "skillforge/memory/profiling.hpp"
#include "skillforge/skills/behaviour.hpp"

namespace skillforge::memory {
namespace {

struct Interval {
  std::string function;
  std::int64_t enter;
  std::int64_t exit;
};

// Brute force: count, per tick, the intervals that contain it.
CallProfileMatrix brute_force(const std::vector<Interval>& intervals, const std::vector<std::string>& functions,
                              std::size_t ticks) {
  CallProfileMatrix m(functions, ticks);
  for (std::size_t r = 0; r < functions.size(); ++r) {
    for (std::size_t t = 0; t < ticks; ++t) {
      std::uint32_t n = 0;
      for (const auto& i : intervals) {
        if (i.function == functions[r] && i.enter <= static_cast<std::int64_t>(t) &&
            static_cast<std::int64_t>(t) <= i.exit) {
          ++n;
        }
      }
      m.at(r, t) = n;
    }
  }
  return m;
}

TEST(Profiling, SingleInstanceClosedInterval) {
  const CallTrace trace = {{TraceEventKind::Enter, "f", 1, 2}, {TraceEventKind::Exit, "f", 1, 4}};
  const auto m = profile_from_events(trace, {"f", "g"}, 6);
  EXPECT_EQ(m.counts, (std::vector<std::uint32_t>{0, 0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0}));
}

TEST(Profiling, UnmatchedEnterRunsToEnd) {
  const CallTrace trace = {{TraceEventKind::Enter, "f", 1, 3}};
  const auto m = profile_from_events(trace, {"f"}, 5);
  EXPECT_EQ(m.counts, (std::vector<std::uint32_t>{0, 0, 0, 1, 1}));
}

TEST(Profiling, RandomNestedTracesMatchBruteForce) {
  const std::vector<std::string> functions = {"a", "b", "c"};
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    ProfileRecorder recorder;
    std::vector<std::pair<ProfileRecorder::Token, Interval>> open;
    std::vector<Interval> closed;
    std::int64_t tick = 0;
    for (int step = 0; step < 40; ++step) {
      tick += static_cast<std::int64_t>(rng() % 2);
      if (open.empty() || rng() % 2 == 0) {
        const auto& f = functions[rng() % functions.size()];
        open.push_back({recorder.enter(f, tick), {f, tick, -1}});
      } else {
        recorder.exit(open.back().first, tick);
        open.back().second.exit = tick;
        closed.push_back(open.back().second);
        open.pop_back();
      }
    }
    const auto ticks = static_cast<std::size_t>(tick + 3);
    for (auto& [token, interval] : open) {
      interval.exit = static_cast<std::int64_t>(ticks) - 1;
      closed.push_back(interval);
    }
    const auto unclosed = recorder.matrix(functions, ticks);
    recorder.close_all(static_cast<std::int64_t>(ticks) - 1);
    EXPECT_EQ(recorder.matrix(functions, ticks), unclosed);
    EXPECT_TRUE(is_well_nested(recorder.events()));
    EXPECT_EQ(recorder.matrix(functions, ticks), brute_force(closed, functions, ticks));
  }
}

TEST(Profiling, RecorderRejectsBackwardsTicksAndUnknownTokens) {
  ProfileRecorder r;
  const auto t = r.enter("f", 5);
  EXPECT_THROW(r.enter("g", 4), ValidationError);
  EXPECT_THROW(r.exit(t + 100, 6), ValidationError);
  r.close_all(7);
  EXPECT_FALSE(r.has_open());
}

TEST(Profiling, WellNested) {
  EXPECT_TRUE(is_well_nested({}));
  EXPECT_FALSE(is_well_nested({{TraceEventKind::Enter, "f", 1, 0},
                               {TraceEventKind::Enter, "g", 2, 0},
                               {TraceEventKind::Exit, "f", 1, 1},
                               {TraceEventKind::Exit, "g", 2, 1}}));
  EXPECT_FALSE(is_well_nested({{TraceEventKind::Exit, "f", 1, 0}}));
}

TEST(CallTree, LeavesOwnTicksAndLastLeafAbsorbsRest) {
  using skills::CallNode;
  const std::vector<CallNode> tree = {{"plan", {{"ik", {}}, {"collide", {}}}}, {"move", {}}};
  const auto trace = skills::schedule_call_tree(tree, 5);
  EXPECT_TRUE(is_well_nested(trace));
  const auto m = profile_from_events(trace, {"plan", "ik", "collide", "move"}, 5);
  EXPECT_EQ(m.counts, (std::vector<std::uint32_t>{1, 1, 0, 0, 0,    // plan spans ik..collide
                                                  1, 0, 0, 0, 0,    // ik
                                                  0, 1, 0, 0, 0,    // collide
                                                  0, 0, 1, 1, 1}));  // move takes the rest
  EXPECT_THROW(skills::schedule_call_tree(tree, 2), ValidationError);
}

}  // namespace
}  // namespace skillforge::memory
