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

#include "skillforge/skills/catalog.hpp"

#include <algorithm>

namespace skillforge::skills {
namespace {

using sim::ContactMode;
using sim::ObjectKind;
using sim::Orientation;
using sim::SimObject;
using sim::WorldState;

constexpr double kReach = 0.5;
constexpr double kGraspHeight = 1.0;
constexpr double kPushDistance = 2.0;

const std::set<std::string> kArm = {"left_arm"};
const std::set<std::string> kHand = {"left_hand"};
const std::set<std::string> kCamera = {"camera"};
const std::vector<std::string> kGraspHardware = {"left_arm", "left_hand", "camera"};

CallNode leaf(std::string f) { return {std::move(f), {}}; }
CallNode node(std::string f, std::vector<CallNode> children) { return {std::move(f), std::move(children)}; }

SimObject* target(WorldState& w) {
  if (w.localised_object) {
    if (auto* o = w.find(*w.localised_object)) return o;
  }
  return w.objects.empty() ? nullptr : &w.objects.front();
}

double clamp_ws(double v) { return std::clamp(v, 0.0, sim::kWorkspaceSize); }

void move_arm(WorldState& w, Vec3 pose) {
  w.arm_pose = pose;
  if (w.held_object) w.find(*w.held_object)->position = {clamp_ws(pose.x), clamp_ws(pose.y)};
}

Transition infeasible(const WorldState& w, std::string why) {
  Transition t{w};
  t.feasible = false;
  t.failure = std::move(why);
  return t;
}

Transition push_to(const WorldState& w, const std::optional<Vec2>& goal_override,
                   Vec2 (*goal_of)(const SimObject&)) {
  Transition t{w};
  SimObject* object = target(t.next);
  if (object == nullptr) return infeasible(w, "nothing to push");
  if (t.next.held_object == object->id) return infeasible(w, "cannot push a held object");
  const Vec2 goal = goal_override ? *goal_override : goal_of(*object);
  object->position = {clamp_ws(goal.x), clamp_ws(goal.y)};
  move_arm(t.next, {object->position.x, object->position.y, kGraspHeight});
  return t;
}

bool graspable(const SimObject& o) {
  switch (o.kind) {
    case ObjectKind::Cube:
      return true;
    case ObjectKind::Book:
      // Only a book lying spine-forward can be lifted.
      return o.orientation == Orientation::Deg0;
    case ObjectKind::BoxStack:
      return o.height > 0;
    case ObjectKind::LidBox:
      return false;
  }
  return false;
}

void register_functions(sim::FunctionRegistry& f) {
  for (const char* id : {"read_joint_state", "forward_kinematics", "inverse_kinematics"}) f.add(id, "kinematics");
  for (const char* id : {"plan_joint", "plan_cartesian", "check_collision"}) f.add(id, "planning");
  for (const char* id : {"execute_trajectory", "set_stiffness", "read_force_torque"}) f.add(id, "control");
  for (const char* id : {"close_hand", "open_hand", "read_finger_force"}) f.add(id, "hand");
  for (const char* id : {"grab_depth_image", "segment_point_cloud", "fit_box", "estimate_pose"}) {
    f.add(id, "perception");
  }
  for (const char* id : {"compute_milestones", "compute_push_direction", "compute_rotation_contact"}) {
    f.add(id, "pushing");
  }
  for (const char* id : {"slide_controller", "poke_controller", "press_controller"}) f.add(id, "sensing");
  for (const char* id : {"lift_object", "place_object"}) f.add(id, "manipulation");
}

BehaviourDescriptor make(std::string id, BehaviourCategory category, std::string description,
                         std::set<std::string> hardware, std::vector<CallNode> tree, ParamSchema schema = {}) {
  BehaviourDescriptor d;
  d.id = std::move(id);
  d.category = category;
  d.description = std::move(description);
  d.required_hardware = std::move(hardware);
  d.call_tree = std::move(tree);
  d.parameter_schema = std::move(schema);
  d.duration_ticks = category == BehaviourCategory::Sensing ? kSensingTicks : kMotionTicks;
  return d;
}

ParamSpec vec2_param(std::string name, bool required) {
  ParamSpec p;
  p.name = std::move(name);
  p.type = ParamType::Vec2;
  p.required = required;
  return p;
}

ParamSpec enum_param(std::string name, std::vector<std::string> values) {
  ParamSpec p;
  p.name = std::move(name);
  p.type = ParamType::Enum;
  p.required = true;
  p.enum_values = std::move(values);
  return p;
}

void register_primitives(Engine& e, const sim::ScenarioCatalog& catalog) {
  const Vec3 home = catalog.home_pose();
  const Vec2 bin = catalog.bin_position();

  e.register_behaviour(
      make("move_home", BehaviourCategory::Motion, "Move to initial position", kArm,
           {leaf("read_joint_state"), node("plan_joint", {leaf("forward_kinematics")}), leaf("execute_trajectory")}),
      [home](const WorldState& w, const ParamMap&) {
        Transition t{w};
        move_arm(t.next, home);
        return t;
      });

  e.register_behaviour(
      make("joint_ptp", BehaviourCategory::Motion, "Moves joints to specified position", kArm,
           {leaf("read_joint_state"), node("plan_joint", {leaf("check_collision")}), leaf("execute_trajectory")},
           {vec2_param("goal", true)}),
      [](const WorldState& w, const ParamMap& p) {
        const Vec2 goal = *get_vec2(p, "goal");
        if (goal.x < 0 || goal.y < 0 || goal.x > sim::kWorkspaceSize || goal.y > sim::kWorkspaceSize) {
          return infeasible(w, "goal outside the workspace");
        }
        Transition t{w};
        move_arm(t.next, {goal.x, goal.y, w.arm_pose.z});
        return t;
      });

  e.register_behaviour(
      make("cartesian_ptp", BehaviourCategory::Motion, "Moves end-effector to Cartesian position", kArm,
           {leaf("read_joint_state"), node("plan_cartesian", {leaf("inverse_kinematics"), leaf("check_collision")}),
            leaf("execute_trajectory")},
           {vec2_param("goal", false)}),
      [](const WorldState& w, const ParamMap& p) {
        Transition t{w};
        std::optional<Vec2> goal = get_vec2(p, "goal");
        if (!goal && w.localised_object) {
          if (const auto* o = w.find(*w.localised_object)) goal = o->position;
        }
        if (!goal) return infeasible(w, "no goal and no localised object");
        move_arm(t.next, {clamp_ws(goal->x), clamp_ws(goal->y), kGraspHeight});
        return t;
      });

  e.register_behaviour(
      make("localise_object", BehaviourCategory::Perception, "Searches for a defined object on the table", kCamera,
           {leaf("grab_depth_image"), leaf("segment_point_cloud"), leaf("fit_box"), leaf("estimate_pose")}),
      [](const WorldState& w, const ParamMap&) {
        if (w.objects.empty()) return infeasible(w, "no object on the table");
        Transition t{w};
        t.next.localised_object = w.objects.front().id;
        return t;
      });

  e.register_behaviour(
      make("close_hand", BehaviourCategory::Hand, "Close the hand", kHand,
           {leaf("close_hand"), leaf("read_finger_force")}),
      [](const WorldState& w, const ParamMap&) {
        Transition t{w};
        auto& n = t.next;
        n.hand_open = false;
        if (n.held_object) return t;
        const Vec2 at{w.arm_pose.x, w.arm_pose.y};
        for (auto& o : n.objects) {
          if (distance(o.position, at) > kReach || !graspable(o)) continue;
          if (o.kind == ObjectKind::BoxStack) {
            SimObject box;
            box.id = o.id + "_box" + std::to_string(o.height);
            box.kind = ObjectKind::Cube;
            box.position = o.position;
            --o.height;
            n.held_object = box.id;
            n.objects.push_back(std::move(box));
          } else {
            n.held_object = o.id;
          }
          break;
        }
        return t;
      });

  e.register_behaviour(
      make("open_hand", BehaviourCategory::Hand, "Open the hand", kHand, {leaf("open_hand"), leaf("read_finger_force")}),
      [](const WorldState& w, const ParamMap&) {
        Transition t{w};
        t.next.hand_open = true;
        t.next.held_object.reset();
        return t;
      });

  {
    ParamSpec stiffness;
    stiffness.name = "stiffness";
    stiffness.type = ParamType::Real;
    stiffness.default_value = 1.0;
    e.register_behaviour(
        make("change_stiffness", BehaviourCategory::Motion, "Change impedance settings of the arm", kArm,
             {leaf("set_stiffness"), leaf("read_force_torque")}, {stiffness}),
        [](const WorldState& w, const ParamMap& p) {
          if (*get_real(p, "stiffness") <= 0.0) return infeasible(w, "stiffness must be positive");
          return Transition{w};
        });
  }

  e.register_behaviour(
      make("place_in_bin", BehaviourCategory::Motion, "Place the held object in the bin", {"left_arm", "left_hand"},
           {node("lift_object", {leaf("execute_trajectory")}), node("plan_cartesian", {leaf("inverse_kinematics")}),
            leaf("execute_trajectory"), node("place_object", {leaf("open_hand")})}),
      [bin](const WorldState& w, const ParamMap&) {
        if (!w.held_object) return infeasible(w, "nothing to place");
        Transition t{w};
        move_arm(t.next, {bin.x, bin.y, 3.0});
        t.next.held_object.reset();
        t.next.hand_open = true;
        ++t.next.placed;
        return t;
      });

  const std::vector<CallNode> push_tree = {leaf("compute_push_direction"),
                                           node("plan_cartesian", {leaf("inverse_kinematics")}),
                                           leaf("execute_trajectory")};
  e.register_behaviour(
      make("push_to_position", BehaviourCategory::Motion, "Push object to a certain position", kArm,
           {leaf("compute_milestones"), node("plan_cartesian", {leaf("inverse_kinematics")}),
            leaf("compute_push_direction"), leaf("set_stiffness"), leaf("execute_trajectory")},
           {vec2_param("goal", true)}),
      [](const WorldState& w, const ParamMap& p) {
        return push_to(w, get_vec2(p, "goal"), [](const SimObject& o) { return o.position; });
      });
  e.register_behaviour(make("push_to_body", BehaviourCategory::Motion, "Push an object towards the body", kArm, push_tree),
                       [](const WorldState& w, const ParamMap&) {
                         return push_to(w, std::nullopt, [](const SimObject& o) {
                           return Vec2{o.position.x, o.position.y - kPushDistance};
                         });
                       });
  e.register_behaviour(make("push_from_body", BehaviourCategory::Motion, "Push object away from the body", kArm,
                            push_tree),
                       [](const WorldState& w, const ParamMap&) {
                         return push_to(w, std::nullopt, [](const SimObject& o) {
                           return Vec2{o.position.x, o.position.y + kPushDistance};
                         });
                       });

  e.register_behaviour(
      make("push_to_orientation", BehaviourCategory::Motion, "Rotate the object to a certain orientation",
           {"left_arm", "camera"},
           {leaf("estimate_pose"), leaf("compute_rotation_contact"), leaf("compute_push_direction"),
            leaf("execute_trajectory")},
           {enum_param("orientation", {"Deg0", "Deg90", "Deg180", "Deg270"})}),
      [](const WorldState& w, const ParamMap& p) {
        Transition t{w};
        SimObject* object = target(t.next);
        if (object == nullptr) return infeasible(w, "nothing to rotate");
        object->orientation = sim::parse_orientation(*get_enum(p, "orientation"));
        move_arm(t.next, {object->position.x, object->position.y, kGraspHeight});
        return t;
      });

  e.register_behaviour(
      make("rotate_by", BehaviourCategory::Motion, "Rotate the object by pushing one of its corners", kArm,
           {leaf("compute_rotation_contact"), node("plan_cartesian", {leaf("check_collision")}),
            leaf("execute_trajectory")},
           {enum_param("angle", {"-90", "90", "180"})}),
      [](const WorldState& w, const ParamMap& p) {
        Transition t{w};
        SimObject* object = target(t.next);
        if (object == nullptr) return infeasible(w, "nothing to rotate");
        if (t.next.held_object == object->id) return infeasible(w, "cannot rotate a held object");
        object->orientation = sim::rotate(object->orientation, std::stoi(*get_enum(p, "angle")));
        move_arm(t.next, {object->position.x, object->position.y, kGraspHeight + 1.0});
        return t;
      });

  auto sensing = [](ContactMode mode) {
    return [mode](const WorldState& w, const ParamMap&) {
      Transition t{w};
      t.contact = mode;
      return t;
    };
  };
  e.register_behaviour(
      make("sliding", BehaviourCategory::Sensing, "Slides along the object's surface", kArm,
           {leaf("set_stiffness"), node("slide_controller", {leaf("read_force_torque"), leaf("execute_trajectory")})}),
      sensing(ContactMode::Slide));
  e.register_behaviour(
      make("poking", BehaviourCategory::Sensing, "Pokes on top of the object", kArm,
           {leaf("set_stiffness"), node("poke_controller", {leaf("read_force_torque")}), leaf("execute_trajectory")}),
      sensing(ContactMode::Poke));
  e.register_behaviour(
      make("pressing", BehaviourCategory::Sensing, "Presses the object between the hands", {"left_hand", "right_hand"},
           {node("press_controller", {leaf("close_hand"), leaf("read_finger_force")}), leaf("open_hand")}),
      sensing(ContactMode::Press));

  e.register_behaviour(
      make("press_button", BehaviourCategory::Motion, "Presses a button at a fixed position", kArm,
           {node("plan_joint", {leaf("inverse_kinematics")}), leaf("execute_trajectory"), leaf("read_force_torque")}),
      [home](const WorldState& w, const ParamMap&) {
        if (w.held_object) return infeasible(w, "hand must be empty to press the button");
        Transition t{w};
        move_arm(t.next, home);
        return t;
      });
}

void add_program(Engine& e, const std::string& id, ProgramAst program, std::string description) {
  e.register_program_behaviour(id, std::move(program), std::move(description));
}

ProgramAst wrap(std::vector<std::string> hardware, std::vector<ProgramNode> body) {
  std::vector<ProgramNode> children;
  children.push_back(hardware_decl(std::move(hardware)));
  for (auto& n : body) children.push_back(std::move(n));
  return {kAstVersion, sequence(std::move(children))};
}

}  // namespace

ProgramAst simple_grasp_program() {
  return wrap(kGraspHardware, {call("move_home"), call("localise_object"), call("cartesian_ptp"), call("close_hand")});
}

ProgramAst pick_and_place_program() {
  return wrap(kGraspHardware, {skill_call("simple_grasp"), call("place_in_bin")});
}

ProgramAst book_grasp_program() {
  return wrap(kGraspHardware, {call("move_home"), call("localise_object"),
                               call("push_to_position", {{"goal", Vec2{5.0, 2.0}}}), call("cartesian_ptp"),
                               call("close_hand")});
}

ProgramAst repeat_pick_and_place_program(int n) {
  return wrap(kGraspHardware, {loop(n, skill_call("pick_and_place"))});
}

std::string repeat_pick_and_place_id(int n) { return "repeat_pick_and_place_" + std::to_string(n); }

std::vector<playing::ActionRef> book_preparatory_actions() {
  std::vector<playing::ActionRef> out;
  for (const char* angle : {"-90", "90", "180"}) {
    out.push_back(playing::ActionRef::behaviour("rotate_by", {{"angle", std::string(angle)}}));
  }
  return out;
}

std::vector<playing::ActionRef> tower_preparatory_actions() {
  std::vector<playing::ActionRef> out;
  for (int n = 1; n <= 3; ++n) out.push_back(playing::ActionRef::behaviour(repeat_pick_and_place_id(n)));
  return out;
}

std::map<std::string, sim::Situation> test_situations() {
  using sim::ScenarioId;
  const sim::Situation flat{ScenarioId::Flat, {}};
  return {
      {"simple_grasp", flat},
      {"pick_and_place", flat},
      {"book_grasping", {ScenarioId::Book, {{"orientation", "Deg0"}}}},
      {"push_to_front", flat},
      {"push_away", flat},
      {"book_reorientation", {ScenarioId::Book, {{"orientation", "Deg90"}}}},
      {"book_flip", {ScenarioId::Book, {{"orientation", "Deg180"}}}},
      {"box_inspection", {ScenarioId::Box, {{"open", "true"}}}},
      {"texture_scan", flat},
      {"button_press", flat},
      {"joint_tour", flat},
  };
}

void install_default_catalog(Engine& e) {
  sim::HardwareRegistry::register_defaults(e.hardware());
  register_functions(e.functions());
  register_primitives(e, e.catalog());

  add_program(e, "simple_grasp", simple_grasp_program(),
              "Place end-effector on top of an object and close the hand");
  e.create_skill("simple_grasp", "simple_grasp", "object_grasped", {kGraspHardware.begin(), kGraspHardware.end()});

  add_program(e, "pick_and_place", pick_and_place_program(), "Grasp an object and place it in a box");
  e.create_skill("pick_and_place", "pick_and_place", "object_placed", {kGraspHardware.begin(), kGraspHardware.end()});

  for (int n = 1; n <= 3; ++n) {
    add_program(e, repeat_pick_and_place_id(n), repeat_pick_and_place_program(n),
                "Pick and place " + std::to_string(n) + " times");
  }

  add_program(e, "book_grasp_basic", book_grasp_program(), "Push the book in front of the robot and grasp it");
  e.create_skill("book_grasping", "book_grasp_basic", "book_grasped", {kGraspHardware.begin(), kGraspHardware.end()});
  e.create_skill("tower_disassembly", std::nullopt, "tower_cleared", {kGraspHardware.begin(), kGraspHardware.end()});

  add_program(e, "push_to_front",
              wrap({"left_arm", "camera"}, {call("move_home"), call("localise_object"),
                                            call("push_to_position", {{"goal", Vec2{5.0, 2.0}}})}),
              "Push the object in front of the robot");
  e.create_skill("push_to_front", "push_to_front", "object_in_front", {"left_arm", "camera"});

  add_program(e, "push_away",
              wrap({"left_arm", "camera"}, {call("move_home"), call("localise_object"), call("push_from_body")}),
              "Push the object out of reach");
  e.create_skill("push_away", "push_away", "object_far", {"left_arm", "camera"});

  add_program(e, "book_reorientation",
              wrap({"left_arm", "camera"},
                   {call("localise_object"), call("push_to_orientation", {{"orientation", std::string("Deg0")}})}),
              "Turn the book spine-forward");
  e.create_skill("book_reorientation", "book_reorientation", "book_upright", {"left_arm", "camera"});

  add_program(e, "book_flip",
              wrap({"left_arm", "camera"}, {call("localise_object"), call("rotate_by", {{"angle", std::string("180")}})}),
              "Turn the book half way round");
  e.create_skill("book_flip", "book_flip", "book_upright", {"left_arm", "camera"});

  add_program(e, "box_inspection", wrap({"left_arm"}, {call("change_stiffness"), call("poking"), call("move_home")}),
              "Poke the box lid and return home");
  e.create_skill("box_inspection", "box_inspection", "arm_at_home", {"left_arm"});

  add_program(e, "texture_scan",
              wrap({"left_arm", "left_hand", "right_hand"}, {call("sliding"), call("pressing"), call("open_hand")}),
              "Slide over and squeeze the object");
  e.create_skill("texture_scan", "texture_scan", "hand_empty", {"left_arm", "left_hand", "right_hand"});

  add_program(e, "button_press", wrap({"left_arm"}, {call("press_button")}), "Press the button");
  e.create_skill("button_press", "button_press", "arm_at_home", {"left_arm"});

  add_program(e, "joint_tour",
              wrap({"left_arm"}, {call("joint_ptp", {{"goal", Vec2{2.0, 2.0}}}),
                                  call("joint_ptp", {{"goal", Vec2{8.0, 2.0}}}), call("move_home")}),
              "Visit two joint-space poses and return home");
  e.create_skill("joint_tour", "joint_tour", "arm_at_home", {"left_arm"});
}

}  // namespace skillforge::skills
