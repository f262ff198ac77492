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

#include "skillforge/memory/profiling.hpp"

#include <algorithm>
#include <unordered_map>

#include "skillforge/common.hpp"

namespace skillforge::memory {

bool is_well_nested(const CallTrace& trace) {
  std::vector<const TraceEvent*> stack;
  for (const auto& event : trace) {
    if (event.kind == TraceEventKind::Enter) {
      stack.push_back(&event);
      continue;
    }
    if (stack.empty()) return false;
    const auto* open = stack.back();
    if (open->instance != event.instance || open->function != event.function ||
        open->tick > event.tick) {
      return false;
    }
    stack.pop_back();
  }
  return stack.empty();
}

CallProfileMatrix profile_from_events(const CallTrace& trace,
                                      const std::vector<std::string>& functions,
                                      std::size_t ticks) {
  CallProfileMatrix matrix(functions, ticks);
  std::unordered_map<std::string, std::size_t> rows;
  for (std::size_t i = 0; i < functions.size(); ++i) rows.emplace(functions[i], i);

  struct Open {
    std::size_t row;
    std::int64_t tick;
  };
  std::unordered_map<std::uint64_t, Open> open;
  auto add = [&](std::size_t row, std::int64_t from, std::int64_t to) {
    from = std::max<std::int64_t>(from, 0);
    to = std::min<std::int64_t>(to, static_cast<std::int64_t>(ticks) - 1);
    for (auto t = from; t <= to; ++t) ++matrix.at(row, static_cast<std::size_t>(t));
  };
  for (const auto& event : trace) {
    auto row = rows.find(event.function);
    if (row == rows.end()) continue;
    if (event.kind == TraceEventKind::Enter) {
      open[event.instance] = {row->second, event.tick};
    } else if (auto it = open.find(event.instance); it != open.end()) {
      add(it->second.row, it->second.tick, event.tick);
      open.erase(it);
    }
  }
  for (const auto& [instance, o] : open) add(o.row, o.tick, static_cast<std::int64_t>(ticks) - 1);
  return matrix;
}

void ProfileRecorder::check_tick(std::int64_t tick) {
  if (tick < last_tick_) {
    throw ValidationError("profiling tick " + std::to_string(tick) + " precedes tick " +
                          std::to_string(last_tick_));
  }
  last_tick_ = tick;
}

ProfileRecorder::Token ProfileRecorder::enter(const std::string& function, std::int64_t tick) {
  check_tick(tick);
  const Token token = next_++;
  open_.emplace(token, function);
  events_.push_back({TraceEventKind::Enter, function, token, tick});
  return token;
}

void ProfileRecorder::exit(Token token, std::int64_t tick) {
  auto it = open_.find(token);
  if (it == open_.end()) throw ValidationError("profile exit without matching enter");
  check_tick(tick);
  events_.push_back({TraceEventKind::Exit, it->second, token, tick});
  open_.erase(it);
}

void ProfileRecorder::close_all(std::int64_t tick) {
  // Innermost first: the most recently entered open instance has the
  // highest token.
  while (!open_.empty()) exit(std::prev(open_.end())->first, tick);
}

}  // namespace skillforge::memory
