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

#include "skillforge/skills/engine.hpp"

#include <algorithm>
#include <json.hpp>

#include "skillforge/memory/recording.hpp"

namespace skillforge::skills {

namespace {

constexpr int kMaxNesting = 16;
constexpr const char* kWaypointBehaviour = "waypoint_motion";

}  // namespace

// Mutable state of one execution: the recording session, the profiler and
// the fault snapshot. Faults draw from their own stream, seeded once from the
// execution's generator, so a fault that never triggers leaves every other
// draw untouched.
class ExecutionContext {
 public:
  ExecutionContext(Engine& engine, std::set<std::string> hardware_names, Rng& rng)
      : rng(rng),
        fault_rng(rng()),
        faults(engine.faults_.active()),
        hardware(std::move(hardware_names)),
        recording(engine.handles_for(hardware), engine.config_.sensors, rng) {}

  double bias_at(std::int64_t t) const { return degrade_from && t >= *degrade_from ? bias : 0.0; }

  void abort(std::string reason) {
    aborted = true;
    if (failure.empty()) failure = std::move(reason);
  }

  Rng& rng;
  Rng fault_rng;
  std::vector<sim::FaultSpec> faults;
  std::set<std::string> hardware;
  memory::RecordingSession recording;
  memory::ProfileRecorder profiler;
  std::int64_t tick = 0;
  std::optional<std::int64_t> degrade_from;
  double bias = 0.0;
  bool aborted = false;
  std::string failure;
  int depth = 0;
};

class Engine::Lease {
 public:
  Lease(Engine& engine, const std::set<std::string>& names) : engine_(engine) {
    std::lock_guard lock(engine_.lease_mutex_);
    for (const auto& name : names) {
      if (engine_.busy_hardware_.contains(name)) {
        throw ConflictError("hardware '" + name + "' is busy");
      }
    }
    engine_.busy_hardware_.insert(names.begin(), names.end());
    names_ = names;
  }
  ~Lease() {
    std::lock_guard lock(engine_.lease_mutex_);
    for (const auto& name : names_) engine_.busy_hardware_.erase(name);
  }
  Lease(const Lease&) = delete;
  Lease& operator=(const Lease&) = delete;

 private:
  Engine& engine_;
  std::set<std::string> names_;
};

Engine::Engine(const sim::ScenarioCatalog& catalog, EngineConfig config)
    : catalog_(&catalog),
      config_(config),
      predicates_(sim::PredicateRegistry::builtin(catalog)),
      faults_(functions_) {
  BehaviourDescriptor identity;
  identity.id = kVoidBehaviour;
  identity.category = BehaviourCategory::Void;
  identity.description = "Does nothing";
  identity.duration_ticks = 1;
  behaviours_.emplace(identity.id,
                      BehaviourEntry{identity, PrimitiveExecutor([](const sim::WorldState& w, const ParamMap&) {
                                       return Transition{w};
                                     })});
}

Engine::~Engine() = default;

// ---- registration ----------------------------------------------------------

void Engine::register_behaviour(BehaviourDescriptor d, PrimitiveExecutor executor) {
  if (d.id.empty()) throw ValidationError("behaviour id must not be empty");
  if (!executor) throw ValidationError("behaviour '" + d.id + "' has no executor");
  for (const auto& h : d.required_hardware) {
    if (!hardware_.contains(h)) {
      throw NotFoundError("behaviour '" + d.id + "' requires unknown hardware '" + h + "'");
    }
  }
  if (d.call_tree.empty() && d.category != BehaviourCategory::Void) {
    throw ValidationError("behaviour '" + d.id + "' has an empty call tree");
  }
  for (const auto& f : flatten(d.call_tree)) {
    if (!functions_.contains(f)) {
      throw NotFoundError("behaviour '" + d.id + "' calls unregistered function '" + f + "'");
    }
  }
  if (d.duration_ticks < 1) throw ValidationError("behaviour '" + d.id + "' needs a positive duration");
  if (leaf_count(d.call_tree) > static_cast<std::size_t>(d.duration_ticks)) {
    throw ValidationError("behaviour '" + d.id + "' call tree does not fit its duration");
  }
  for (const auto& spec : d.parameter_schema) {
    if (spec.type == ParamType::Enum && spec.enum_values.empty()) {
      throw ValidationError("enum parameter '" + spec.name + "' lists no values");
    }
    if (spec.default_value && !conforms(spec, *spec.default_value)) {
      throw ValidationError("default of parameter '" + spec.name + "' violates its schema");
    }
  }
  std::unique_lock lock(registry_mutex_);
  if (behaviours_.contains(d.id)) throw ConflictError("behaviour '" + d.id + "' already registered");
  auto id = d.id;
  behaviours_.emplace(std::move(id), BehaviourEntry{std::move(d), std::move(executor)});
}

void Engine::register_program_behaviour(std::string id, ProgramAst program, std::string description) {
  if (id.empty()) throw ValidationError("behaviour id must not be empty");
  auto diagnostics = validate_program(program);
  if (!diagnostics.empty()) throw ProgramError(std::move(diagnostics));
  BehaviourDescriptor d;
  d.id = id;
  d.category = BehaviourCategory::Composite;
  d.description = std::move(description);
  collect_hardware(program.root, d.required_hardware);
  d.call_tree = static_tree(program.root);
  d.duration_ticks = std::max(1, static_duration(program.root));
  if (d.call_tree.empty()) throw ValidationError("program behaviour '" + id + "' calls nothing");
  std::unique_lock lock(registry_mutex_);
  if (behaviours_.contains(id)) throw ConflictError("behaviour '" + id + "' already registered");
  behaviours_.emplace(std::move(id), BehaviourEntry{std::move(d), std::move(program)});
}

bool Engine::has_behaviour(std::string_view id) const {
  std::shared_lock lock(registry_mutex_);
  return behaviours_.find(id) != behaviours_.end();
}

const Engine::BehaviourEntry& Engine::entry(std::string_view id) const {
  std::shared_lock lock(registry_mutex_);
  auto it = behaviours_.find(id);
  if (it == behaviours_.end()) throw NotFoundError("unknown behaviour '" + std::string(id) + "'");
  // Entries are never removed and map nodes are stable.
  return it->second;
}

BehaviourDescriptor Engine::behaviour(std::string_view id) const { return entry(id).descriptor; }

std::optional<ProgramAst> Engine::behaviour_program(std::string_view id) const {
  const auto& e = entry(id);
  if (const auto* p = std::get_if<ProgramAst>(&e.impl)) return *p;
  return std::nullopt;
}

std::vector<BehaviourDescriptor> Engine::palette() const {
  std::shared_lock lock(registry_mutex_);
  std::vector<BehaviourDescriptor> out;
  for (const auto& [id, e] : behaviours_) out.push_back(e.descriptor);
  return out;
}

Skill Engine::create_skill(const std::string& name, std::optional<std::string> basic_behaviour,
                           const std::string& predicate, std::set<std::string> hardware) {
  if (name.empty()) throw ValidationError("skill name must not be empty");
  if (basic_behaviour && *basic_behaviour == kVoidBehaviour) basic_behaviour.reset();
  if (basic_behaviour && !has_behaviour(*basic_behaviour)) {
    throw NotFoundError("unknown behaviour '" + *basic_behaviour + "'");
  }
  if (!predicates_.contains(predicate)) throw NotFoundError("unknown predicate '" + predicate + "'");
  for (const auto& h : hardware) {
    if (!hardware_.contains(h)) throw NotFoundError("unknown hardware '" + h + "'");
  }
  Skill s;
  s.id = name;
  s.basic_behaviour = std::move(basic_behaviour);
  s.success_predicate = predicate;
  s.required_hardware = std::move(hardware);
  {
    std::unique_lock lock(registry_mutex_);
    if (skills_.contains(name)) throw ConflictError("skill '" + name + "' already exists");
    skills_.emplace(name, s);
  }
  if (store_ != nullptr) {
    nlohmann::json doc = {{"id", s.id},
                          {"basic_behaviour", s.basic_behaviour.value_or(kVoidBehaviour)},
                          {"success_predicate", s.success_predicate},
                          {"required_hardware", s.required_hardware}};
    store_->put_document("skill", s.id, doc.dump());
  }
  return s;
}

bool Engine::has_skill(std::string_view id) const {
  std::shared_lock lock(registry_mutex_);
  return skills_.find(id) != skills_.end();
}

Skill Engine::skill(std::string_view id) const {
  std::shared_lock lock(registry_mutex_);
  auto it = skills_.find(id);
  if (it == skills_.end()) throw NotFoundError("unknown skill '" + std::string(id) + "'");
  return it->second;
}

std::vector<std::string> Engine::skill_ids() const {
  std::shared_lock lock(registry_mutex_);
  std::vector<std::string> out;
  for (const auto& [id, s] : skills_) out.push_back(id);
  return out;
}

void Engine::set_training(const std::string& skill_id, playing::Ecm ecm, playing::PerceptualModel model) {
  ecm.validate();
  if (ecm.skill() != skill_id) {
    throw ValidationError("ECM belongs to '" + ecm.skill() + "', not '" + skill_id + "'");
  }
  for (auto clip : ecm.clips_in(playing::EcmLayer::Sensing)) {
    const auto& action = ecm.clips()[clip].sensing_action;
    if (!model.has(action)) throw ValidationError("no classifier for sensing action '" + action + "'");
    if (!has_behaviour(action)) throw NotFoundError("unknown sensing action '" + action + "'");
  }
  for (auto layer : {playing::EcmLayer::Preparation, playing::EcmLayer::Basic}) {
    for (auto clip : ecm.clips_in(layer)) {
      const auto& action = ecm.clips()[clip].action;
      if (action.kind == playing::ActionRef::Kind::Skill) {
        if (action.id == skill_id) throw ValidationError("skill '" + skill_id + "' cannot prepare itself");
        if (!has_skill(action.id)) throw NotFoundError("unknown skill '" + action.id + "'");
      } else if (action.kind == playing::ActionRef::Kind::Behaviour && !has_behaviour(action.id)) {
        throw NotFoundError("unknown behaviour '" + action.id + "'");
      }
    }
  }
  {
    std::unique_lock lock(registry_mutex_);
    auto it = skills_.find(skill_id);
    if (it == skills_.end()) throw NotFoundError("unknown skill '" + skill_id + "'");
    it->second.ecm = std::move(ecm);
    it->second.perception = std::move(model);
    it->second.promoted = false;
  }
  if (store_ != nullptr) store_->put_document("ecm", skill_id, skill(skill_id).ecm->to_json());
}

void Engine::note_play_outcomes(const std::string& skill_id, const std::vector<bool>& outcomes) {
  std::unique_lock lock(registry_mutex_);
  auto it = skills_.find(skill_id);
  if (it == skills_.end()) throw NotFoundError("unknown skill '" + skill_id + "'");
  auto& s = it->second;
  s.recent_outcomes.insert(s.recent_outcomes.end(), outcomes.begin(), outcomes.end());
  if (s.recent_outcomes.size() > config_.promotion_window) {
    s.recent_outcomes.erase(s.recent_outcomes.begin(),
                            s.recent_outcomes.end() - static_cast<std::ptrdiff_t>(config_.promotion_window));
  }
  s.promoted = s.trained() && s.recent_outcomes.size() >= config_.promotion_window &&
               s.recent_success_rate() >= config_.promotion_threshold;
}

std::vector<std::string> Engine::list_skills_for_hardware(const std::set<std::string>& config) const {
  std::shared_lock lock(registry_mutex_);
  std::vector<std::string> out;
  for (const auto& [id, s] : skills_) {
    if (std::includes(config.begin(), config.end(), s.required_hardware.begin(), s.required_hardware.end())) {
      out.push_back(id);
    }
  }
  return out;
}

void Engine::check_depth(int depth) const {
  if (depth > kMaxNesting) throw ValidationError("skill hierarchy nested too deeply");
}

void Engine::action_coverage(const playing::ActionRef& action, std::set<std::string>& out, int depth) const {
  check_depth(depth);
  switch (action.kind) {
    case playing::ActionRef::Kind::Void:
      break;
    case playing::ActionRef::Kind::Behaviour: {
      auto f = flatten(entry(action.id).descriptor.call_tree);
      out.insert(f.begin(), f.end());
      break;
    }
    case playing::ActionRef::Kind::Skill: {
      const Skill s = skill(action.id);
      if (s.basic_behaviour) action_coverage(playing::ActionRef::behaviour(*s.basic_behaviour), out, depth + 1);
      if (s.ecm) {
        for (const auto& clip : s.ecm->clips()) {
          if (clip.layer == playing::EcmLayer::Sensing) {
            action_coverage(playing::ActionRef::behaviour(clip.sensing_action), out, depth + 1);
          } else if (clip.layer == playing::EcmLayer::Preparation) {
            action_coverage(clip.action, out, depth + 1);
          }
        }
      }
      break;
    }
  }
}

std::set<std::string> Engine::coverage(std::string_view skill_id) const {
  std::set<std::string> out;
  action_coverage(playing::ActionRef::skill(std::string(skill_id)), out, 0);
  return out;
}

void Engine::action_hardware(const playing::ActionRef& action, std::set<std::string>& out, int depth) const {
  check_depth(depth);
  if (action.kind == playing::ActionRef::Kind::Behaviour) {
    const auto& h = entry(action.id).descriptor.required_hardware;
    out.insert(h.begin(), h.end());
  } else if (action.kind == playing::ActionRef::Kind::Skill) {
    auto h = skill_hardware(skill(action.id), depth + 1);
    out.insert(h.begin(), h.end());
  }
}

std::set<std::string> Engine::skill_hardware(const Skill& s, int depth) const {
  check_depth(depth);
  std::set<std::string> out = s.required_hardware;
  if (s.basic_behaviour) action_hardware(playing::ActionRef::behaviour(*s.basic_behaviour), out, depth);
  if (s.ecm) {
    for (const auto& clip : s.ecm->clips()) {
      if (clip.layer == playing::EcmLayer::Sensing) {
        action_hardware(playing::ActionRef::behaviour(clip.sensing_action), out, depth);
      } else if (clip.layer == playing::EcmLayer::Preparation) {
        action_hardware(clip.action, out, depth);
      }
    }
  }
  return out;
}

// ---- program analysis ------------------------------------------------------

std::vector<CallNode> Engine::static_tree(const ProgramNode& node) const {
  std::vector<CallNode> out;
  auto append = [&out](const std::vector<CallNode>& more) { out.insert(out.end(), more.begin(), more.end()); };
  switch (node.kind) {
    case NodeKind::Sequence:
    case NodeKind::Loop:
      for (const auto& child : node.children) append(static_tree(child));
      break;
    case NodeKind::BehaviourCall:
      append(entry(node.behaviour).descriptor.call_tree);
      break;
    case NodeKind::SkillCall: {
      const Skill s = skill(node.skill);
      if (s.basic_behaviour) append(entry(*s.basic_behaviour).descriptor.call_tree);
      break;
    }
    case NodeKind::HardwareDecl:
      break;
    case NodeKind::WaypointMotion:
      for (std::size_t i = 0; i < node.waypoints.size(); ++i) {
        append({{"inverse_kinematics", {}}, {"execute_trajectory", {}}});
      }
      break;
  }
  return out;
}

int Engine::static_duration(const ProgramNode& node) const {
  int total = 0;
  switch (node.kind) {
    case NodeKind::Sequence:
      for (const auto& child : node.children) total += static_duration(child);
      break;
    case NodeKind::Loop:
      for (const auto& child : node.children) total += static_duration(child);
      total *= node.count.value_or(1);
      break;
    case NodeKind::BehaviourCall:
      total = entry(node.behaviour).descriptor.duration_ticks;
      break;
    case NodeKind::SkillCall: {
      const Skill s = skill(node.skill);
      total = entry(s.basic_behaviour.value_or(kVoidBehaviour)).descriptor.duration_ticks;
      break;
    }
    case NodeKind::HardwareDecl:
      break;
    case NodeKind::WaypointMotion:
      total = kMotionTicks * static_cast<int>(node.waypoints.size());
      break;
  }
  return total;
}

void Engine::collect_hardware(const ProgramNode& node, std::set<std::string>& out) const {
  switch (node.kind) {
    case NodeKind::Sequence:
    case NodeKind::Loop:
      for (const auto& child : node.children) collect_hardware(child, out);
      break;
    case NodeKind::BehaviourCall: {
      const auto& h = entry(node.behaviour).descriptor.required_hardware;
      out.insert(h.begin(), h.end());
      break;
    }
    case NodeKind::SkillCall: {
      auto h = skill_hardware(skill(node.skill));
      out.insert(h.begin(), h.end());
      break;
    }
    case NodeKind::HardwareDecl:
      break;
    case NodeKind::WaypointMotion:
      out.insert("left_arm");
      break;
  }
}

std::vector<Diagnostic> Engine::validate_program(const ProgramAst& program) const {
  std::vector<Diagnostic> out;
  if (program.version != kAstVersion) {
    out.push_back({"ast_version", "unsupported ast_version " + std::to_string(program.version)});
  }
  validate_node(program.root, "root", {}, out);
  return out;
}

void Engine::validate_node(const ProgramNode& node, const std::string& path,
                           const std::set<std::string>& declared, std::vector<Diagnostic>& out) const {
  auto require_hardware = [&](const std::set<std::string>& needed) {
    for (const auto& h : needed) {
      if (!declared.contains(h)) out.push_back({path, "hardware '" + h + "' is not declared"});
    }
  };
  switch (node.kind) {
    case NodeKind::Sequence: {
      std::set<std::string> scope = declared;
      for (const auto& child : node.children) {
        if (child.kind == NodeKind::HardwareDecl) scope.insert(child.hardware.begin(), child.hardware.end());
      }
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        validate_node(node.children[i], path + ".children[" + std::to_string(i) + "]", scope, out);
      }
      break;
    }
    case NodeKind::Loop: {
      if (node.count.has_value() == node.while_predicate.has_value()) {
        out.push_back({path, "Loop needs exactly one of count and while"});
      }
      if (node.count && (*node.count < 1 || *node.count > kMaxLoopCount)) {
        out.push_back({path + ".count", "count must lie in [1, " + std::to_string(kMaxLoopCount) + "]"});
      }
      if (node.while_predicate && !predicates_.contains(*node.while_predicate)) {
        out.push_back({path + ".while", "unknown predicate '" + *node.while_predicate + "'"});
      }
      if (node.children.size() != 1) {
        out.push_back({path, "Loop needs exactly one body"});
      } else {
        validate_node(node.children.front(), path + ".body", declared, out);
      }
      break;
    }
    case NodeKind::BehaviourCall: {
      if (!has_behaviour(node.behaviour)) {
        out.push_back({path, "unknown behaviour '" + node.behaviour + "'"});
        break;
      }
      const auto& d = entry(node.behaviour).descriptor;
      try {
        resolve_params(d.parameter_schema, node.params);
      } catch (const ValidationError& e) {
        out.push_back({path + ".params", e.what()});
      }
      require_hardware(d.required_hardware);
      break;
    }
    case NodeKind::SkillCall: {
      if (!has_skill(node.skill)) {
        out.push_back({path, "unknown skill '" + node.skill + "'"});
        break;
      }
      require_hardware(skill(node.skill).required_hardware);
      break;
    }
    case NodeKind::HardwareDecl:
      for (const auto& h : node.hardware) {
        if (!hardware_.contains(h)) out.push_back({path, "unknown hardware '" + h + "'"});
      }
      break;
    case NodeKind::WaypointMotion: {
      if (node.waypoints.empty()) out.push_back({path, "WaypointMotion needs waypoints"});
      for (std::size_t i = 0; i < node.waypoints.size(); ++i) {
        const auto& w = node.waypoints[i];
        auto inside = [](double v) { return v >= 0.0 && v <= sim::kWorkspaceSize; };
        if (!inside(w.x) || !inside(w.y) || !inside(w.z)) {
          out.push_back({path + ".waypoints[" + std::to_string(i) + "]", "waypoint outside the workspace"});
        }
      }
      require_hardware({"left_arm"});
      break;
    }
  }
}

// ---- execution -------------------------------------------------------------

std::vector<std::shared_ptr<const sim::HardwareHandle>> Engine::handles_for(const std::set<std::string>& names) {
  std::vector<std::shared_ptr<const sim::HardwareHandle>> out;
  for (const auto& name : names) out.push_back(hardware_.acquire(name));
  return out;
}

bool Engine::evaluate_success(std::string_view predicate, const sim::WorldState& world) const {
  return predicates_.evaluate(predicate, world);
}

void Engine::run_behaviour(ExecutionContext& ctx, sim::WorldState& world, const BehaviourEntry& e,
                           const ParamMap& params) const {
  if (ctx.aborted) return;
  const auto& d = e.descriptor;
  const ParamMap resolved = resolve_params(d.parameter_schema, params);

  if (const auto* program = std::get_if<ProgramAst>(&e.impl)) {
    check_depth(++ctx.depth);
    run_node(ctx, world, program->root);
    --ctx.depth;
    return;
  }

  const auto& executor = std::get<PrimitiveExecutor>(e.impl);
  const memory::CallTrace trace = schedule_call_tree(d.call_tree, d.duration_ticks);
  const Transition transition = executor(world, resolved);

  // Decide fault activation along the schedule before emitting frames.
  std::optional<std::size_t> abort_event;
  for (std::size_t i = 0; i < trace.size() && !abort_event; ++i) {
    const auto& event = trace[i];
    if (event.kind != memory::TraceEventKind::Enter) continue;
    for (const auto& fault : ctx.faults) {
      if (fault.function_id != event.function) continue;
      const bool fires = std::uniform_real_distribution<double>(0.0, 1.0)(ctx.fault_rng) < fault.trigger_probability;
      if (!fires) continue;
      if (fault.mode == sim::FaultMode::FailHard) {
        abort_event = i;
        break;
      }
      if (!ctx.degrade_from) {
        ctx.degrade_from = ctx.tick + event.tick;
        ctx.bias = fault.sensor_bias;
      }
    }
  }

  const std::int64_t duration = d.duration_ticks;
  const std::int64_t frames = abort_event ? trace[*abort_event].tick + 1 : duration;
  sim::WorldState frame = world;
  frame.contact = transition.contact;
  for (std::int64_t k = 0; k < frames; ++k) {
    if (!abort_event && k == duration - 1) {
      frame = transition.next;
      frame.contact = transition.contact;
    } else {
      frame.arm_pose = lerp(world.arm_pose, transition.next.arm_pose,
                            static_cast<double>(k + 1) / static_cast<double>(duration));
    }
    ctx.recording.record_tick(frame, ctx.tick + k, ctx.bias_at(ctx.tick + k));
  }

  const std::size_t replay = abort_event ? *abort_event + 1 : trace.size();
  std::map<std::uint64_t, memory::ProfileRecorder::Token> tokens;
  for (std::size_t i = 0; i < replay; ++i) {
    const auto& event = trace[i];
    if (event.kind == memory::TraceEventKind::Enter) {
      tokens[event.instance] = ctx.profiler.enter(event.function, ctx.tick + event.tick);
    } else {
      ctx.profiler.exit(tokens.at(event.instance), ctx.tick + event.tick);
    }
  }

  if (abort_event) {
    ctx.profiler.close_all(ctx.tick + frames - 1);
    world.arm_pose = frame.arm_pose;
    world.contact = sim::ContactMode::None;
    world.clock += frames;
    ctx.abort("fault in '" + trace[*abort_event].function + "' during '" + d.id + "'");
  } else {
    const std::int64_t clock = world.clock;
    world = transition.next;
    world.contact = sim::ContactMode::None;
    world.clock = clock + (d.category == BehaviourCategory::Void ? 0 : duration);
    if (!transition.feasible) ctx.abort(d.id + ": " + transition.failure);
  }
  ctx.tick += frames;
  sim::check_invariants(world);
}

void Engine::run_waypoints(ExecutionContext& ctx, sim::WorldState& world, const ProgramNode& node) const {
  BehaviourDescriptor d;
  d.id = kWaypointBehaviour;
  d.category = BehaviourCategory::Motion;
  d.required_hardware = {"left_arm"};
  d.call_tree = {{"inverse_kinematics", {}}, {"execute_trajectory", {}}};
  d.duration_ticks = kMotionTicks;
  for (const auto& target : node.waypoints) {
    if (ctx.aborted) return;
    BehaviourEntry step{d, PrimitiveExecutor([target](const sim::WorldState& w, const ParamMap&) {
                          Transition t{w};
                          t.next.arm_pose = target;
                          if (t.next.held_object) {
                            t.next.find(*t.next.held_object)->position = {target.x, target.y};
                          }
                          return t;
                        })};
    run_behaviour(ctx, world, step, {});
  }
}

void Engine::run_node(ExecutionContext& ctx, sim::WorldState& world, const ProgramNode& node) const {
  if (ctx.aborted) return;
  switch (node.kind) {
    case NodeKind::Sequence:
      for (const auto& child : node.children) {
        if (ctx.aborted) break;
        run_node(ctx, world, child);
      }
      break;
    case NodeKind::Loop:
      if (node.count) {
        for (int i = 0; i < *node.count && !ctx.aborted; ++i) run_node(ctx, world, node.children.front());
      } else {
        for (int i = 0; i < kMaxLoopCount && !ctx.aborted && predicates_.evaluate(*node.while_predicate, world);
             ++i) {
          run_node(ctx, world, node.children.front());
        }
      }
      break;
    case NodeKind::BehaviourCall:
      run_behaviour(ctx, world, entry(node.behaviour), node.params);
      break;
    case NodeKind::SkillCall:
      run_action(ctx, world, playing::ActionRef::skill(node.skill));
      break;
    case NodeKind::HardwareDecl:
      break;
    case NodeKind::WaypointMotion:
      run_waypoints(ctx, world, node);
      break;
  }
}

void Engine::run_action(ExecutionContext& ctx, sim::WorldState& world, const playing::ActionRef& action) const {
  if (ctx.aborted) return;
  switch (action.kind) {
    case playing::ActionRef::Kind::Void:
      run_behaviour(ctx, world, entry(kVoidBehaviour), {});
      break;
    case playing::ActionRef::Kind::Behaviour:
      run_behaviour(ctx, world, entry(action.id), action.params);
      break;
    case playing::ActionRef::Kind::Skill: {
      const Skill s = skill(action.id);
      if (!run_skill(ctx, world, s, WalkMode::Greedy, nullptr, nullptr, nullptr)) {
        ctx.abort("skill '" + s.id + "' failed");
      }
      break;
    }
  }
}

bool Engine::run_skill(ExecutionContext& ctx, sim::WorldState& world, const Skill& s, WalkMode mode,
                       const playing::Ecm* ecm, const playing::PerceptualModel* model,
                       std::vector<std::size_t>* path) const {
  check_depth(++ctx.depth);
  if (ecm == nullptr && s.trained()) {
    ecm = &*s.ecm;
    model = &*s.perception;
  }
  const auto basic = s.basic_behaviour ? playing::ActionRef::behaviour(*s.basic_behaviour) : playing::ActionRef::none();

  if (ecm == nullptr) {
    run_action(ctx, world, basic);
  } else {
    if (model == nullptr) throw ValidationError("skill '" + s.id + "' has an ECM but no perceptual model");
    std::vector<std::size_t> local;
    auto& walk = path != nullptr ? *path : local;
    auto step = [&](std::size_t clip) {
      return mode == WalkMode::Stochastic ? ecm->sample(clip, ctx.rng) : ecm->greedy(clip);
    };
    std::size_t clip = ecm->root();
    walk.push_back(clip);

    clip = step(clip);
    walk.push_back(clip);
    const std::string& action = ecm->clips()[clip].sensing_action;
    const std::int64_t first = ctx.tick;
    run_behaviour(ctx, world, entry(action), {});
    if (!ctx.aborted) {
      const auto& classifier = model->classifier(action);
      const auto sensed = ctx.recording.matrix().slice(classifier.channels, static_cast<std::size_t>(first),
                                                       static_cast<std::size_t>(ctx.tick));
      clip = ecm->percept_clip(action, classifier.classify(sensed));
      walk.push_back(clip);

      clip = step(clip);
      walk.push_back(clip);
      run_action(ctx, world, ecm->clips()[clip].action);

      if (!ctx.aborted) {
        clip = ecm->greedy(clip);
        walk.push_back(clip);
        run_action(ctx, world, ecm->clips()[clip].action);
      }
    }
  }
  --ctx.depth;
  return !ctx.aborted && predicates_.evaluate(s.success_predicate, world);
}

memory::ExecutionRecord Engine::finish(ExecutionContext& ctx, const sim::WorldState& start,
                                       const sim::WorldState& end, std::string subject, std::string kind,
                                       bool success, std::string situation, bool persist) {
  ctx.recording.close();
  if (ctx.profiler.has_open()) ctx.profiler.close_all(std::max<std::int64_t>(ctx.tick - 1, 0));
  memory::ExecutionRecord r;
  r.subject = std::move(subject);
  r.subject_kind = std::move(kind);
  r.start_tick = start.clock;
  r.end_tick = end.clock;
  r.success = success;
  r.sensor = ctx.recording.matrix();
  r.profile = ctx.profiler.matrix(functions_.ids(), r.sensor.ticks);
  r.hardware_config = ctx.hardware;
  r.situation = std::move(situation);
  r.failure = success ? std::string() : (ctx.failure.empty() ? "success predicate not met" : ctx.failure);
  if (persist && store_ != nullptr) r.id = store_->persist_execution(r);
  return r;
}

BehaviourResult Engine::apply_behaviour(const sim::WorldState& world, std::string_view behaviour_id,
                                        const ParamMap& params, Rng& rng) {
  const auto& e = entry(behaviour_id);
  resolve_params(e.descriptor.parameter_schema, params);
  sim::check_invariants(world);
  Lease lease(*this, e.descriptor.required_hardware);
  ExecutionContext ctx(*this, e.descriptor.required_hardware, rng);
  BehaviourResult out;
  out.world = world;
  run_behaviour(ctx, out.world, e, params);
  ctx.recording.close();
  out.sensor = ctx.recording.matrix();
  out.trace = ctx.profiler.events();
  out.success = !ctx.aborted;
  out.failure = ctx.failure;
  return out;
}

RunResult Engine::interpret_program(const ProgramAst& program, const sim::WorldState& world, Rng& rng,
                                    const std::string& subject, const std::string& situation) {
  auto diagnostics = validate_program(program);
  if (!diagnostics.empty()) throw ProgramError(std::move(diagnostics));
  sim::check_invariants(world);
  std::set<std::string> hw;
  collect_hardware(program.root, hw);
  Lease lease(*this, hw);
  ExecutionContext ctx(*this, hw, rng);
  RunResult out;
  out.world = world;
  run_node(ctx, out.world, program.root);
  out.record = finish(ctx, world, out.world, subject, "program", !ctx.aborted, situation);
  return out;
}

RunResult Engine::execute_skill(std::string_view skill_id, const sim::WorldState& world, Rng& rng,
                                const std::string& situation) {
  return execute(skill_id, world, rng, situation, true);
}

RunResult Engine::execute(std::string_view skill_id, const sim::WorldState& world, Rng& rng,
                          const std::string& situation, bool persist) {
  const Skill s = skill(skill_id);
  sim::check_invariants(world);
  const auto hw = skill_hardware(s);
  Lease lease(*this, hw);
  ExecutionContext ctx(*this, hw, rng);
  RunResult out;
  out.world = world;
  const bool ok = run_skill(ctx, out.world, s, WalkMode::Greedy, nullptr, nullptr, nullptr);
  out.record = finish(ctx, world, out.world, s.id, "skill", ok, situation, persist);
  return out;
}

EpisodeResult Engine::run_episode(std::string_view skill_id, const sim::WorldState& world, Rng& rng,
                                  WalkMode mode, const playing::Ecm* ecm,
                                  const playing::PerceptualModel* model, const std::string& situation) {
  Skill s = skill(skill_id);
  if (ecm == nullptr) {
    if (!s.trained()) throw ValidationError("skill '" + s.id + "' has no ECM to walk");
    ecm = &*s.ecm;
    model = &*s.perception;
  }
  if (model == nullptr) throw ValidationError("an ECM walk needs a perceptual model");
  if (ecm->skill() != s.id) throw ValidationError("ECM belongs to '" + ecm->skill() + "'");
  // The walked ECM decides which actions can run, so record their hardware.
  Skill walked = s;
  walked.ecm = *ecm;
  const auto hw = skill_hardware(walked);
  sim::check_invariants(world);
  Lease lease(*this, hw);
  ExecutionContext ctx(*this, hw, rng);
  EpisodeResult out;
  out.world = world;
  out.outcome = run_skill(ctx, out.world, s, mode, ecm, model, &out.path);
  out.record = finish(ctx, world, out.world, s.id, "skill", out.outcome, situation);
  return out;
}

DoaRecord Engine::probe_doa(std::string_view skill_id, const std::vector<sim::Situation>& situations,
                            std::uint64_t seed, bool persist) {
  DoaRecord record;
  record.skill = std::string(skill_id);
  skill(skill_id);
  std::vector<sim::WorldState> worlds;
  for (std::size_t i = 0; i < situations.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (situations[j] == situations[i]) {
        throw ValidationError("situation " + situations[i].describe() + " probed twice");
      }
    }
    worlds.push_back(catalog_->instantiate(situations[i], seed + i));
  }
  for (std::size_t i = 0; i < situations.size(); ++i) {
    Rng rng(seed + i);
    auto run = execute(skill_id, worlds[i], rng, situations[i].describe(), persist);
    record.probed.emplace_back(situations[i], run.record.success);
  }
  return record;
}

}  // namespace skillforge::skills
