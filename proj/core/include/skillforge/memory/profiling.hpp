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
#include <map>
#include <string>
#include <vector>

#include "skillforge/memory/matrix.hpp"

namespace skillforge::memory {

enum class TraceEventKind { Enter, Exit };

struct TraceEvent {
  TraceEventKind kind = TraceEventKind::Enter;
  std::string function;
  std::uint64_t instance = 0;
  std::int64_t tick = 0;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

using CallTrace = std::vector<TraceEvent>;

// True when every exit closes the most recent unmatched enter.
bool is_well_nested(const CallTrace& trace);

// Rebuilds F from an enter/exit log: an instance active on [enter, exit]
// contributes one to every tick of that closed interval. Ticks outside
// [0, ticks) are ignored; unmatched enters count until the last tick.
CallProfileMatrix profile_from_events(const CallTrace& trace,
                                      const std::vector<std::string>& functions,
                                      std::size_t ticks);

// Tick-resolution function profiler for one execution.
class ProfileRecorder {
 public:
  using Token = std::uint64_t;

  Token enter(const std::string& function, std::int64_t tick);
  void exit(Token token, std::int64_t tick);

  // Closes every open instance at `tick`, innermost first.
  void close_all(std::int64_t tick);

  const CallTrace& events() const { return events_; }
  bool has_open() const { return !open_.empty(); }

  CallProfileMatrix matrix(const std::vector<std::string>& functions, std::size_t ticks) const {
    return profile_from_events(events_, functions, ticks);
  }

 private:
  void check_tick(std::int64_t tick);

  CallTrace events_;
  std::map<Token, std::string> open_;
  Token next_ = 1;
  std::int64_t last_tick_ = 0;
};

}  // namespace skillforge::memory
