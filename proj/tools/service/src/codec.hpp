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

#include <json.hpp>
#include <string>

#include "skillforge/diagnosis/diagnose.hpp"
#include "skillforge/memory/store.hpp"
#include "skillforge/playing/play.hpp"
#include "skillforge/skills/engine.hpp"

namespace skillforge::service::codec {

using nlohmann::json;

json behaviour(const skills::BehaviourDescriptor& d);
json skill(const skills::Skill& s, const std::set<std::string>& coverage);
json record_summary(const memory::ExecutionRecord& r);
json sensor(const memory::SensorMatrix& m);
json profile(const memory::CallProfileMatrix& m);
json doa(const skills::DoaRecord& d);
json episode(const playing::EpisodeReport& e);
json step(const diagnosis::SessionStep& s);
json blame(const diagnosis::BlameDistribution& b);

// {"function": id, "mode": "FailHard"|"DegradeSensors", "probability": p,
//  "bias": b}, or just the function id for a certain FailHard fault.
sim::FaultSpec fault(const json& j);
// "b_void", "<behaviour>", "skill:<id>" or {"kind", "id", "params"}.
playing::ActionRef action(const json& j);
// {"scenario", "sensing_actions", "preparatory", "repetitions", "holdout"}
playing::PlayingSetup setup(const json& j);

}  // namespace skillforge::service::codec
