// Copyright 2026 The hexwall Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HEXWALL_SCENARIO_HPP_
#define HEXWALL_SCENARIO_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hexwall/config_io.hpp"
#include "hexwall/gait_planner.hpp"
#include "hexwall/task_stack.hpp"
#include "hexwall/wbc_solver.hpp"

namespace hexwall {

enum class MotionKind { kStand, kWalk, kTurnInPlace };

struct EeKeyframe {
  double t = 0.0;
  Vec3 offset = Vec3::Zero();  // m
  Vec3 ypr = Vec3::Zero();     // rad: yaw, pitch, roll
};

/// How keyframes are turned into world-frame end-effector poses.
///  - world:           offset is the absolute position, ypr the absolute orientation.
///  - initial_ee:      offsets and world-axis rotations applied to the initial pose.
///  - trunk_reference: offsets and rotations applied to the initial pose expressed
///                     in the body frame, then carried along the trunk reference
///                     (yaw turns the offset about the body origin).
enum class EeAnchor { kWorld, kInitialEe, kTrunkReference };

struct EeProfile {
  EeAnchor anchor = EeAnchor::kTrunkReference;
  std::vector<EeKeyframe> keyframes;
  double rms_position_tolerance = 0.005;       // m
  double rms_angle_tolerance = deg2rad(0.5);   // rad
};

struct Scenario {
  std::string name;
  std::string description;
  double duration = 0.0;
  double tick = 0.01;
  std::uint64_t seed = 0;
  GaitParams gait;
  double body_height = 0.35;
  PlanarPose start;
  MotionKind motion = MotionKind::kStand;
  std::vector<CommandSegment> commands;  // walk
  double total_yaw = 0.0;                // turn in place
  std::optional<EeProfile> end_effector;
  double payload = 0.0;
  PriorityOrder priorities;
  SolverOptions solver;
  std::array<double, 3> arm_angles{deg2rad(30.0), deg2rad(100.0), deg2rad(40.0)};
  std::array<double, 3> manipulator_angles{deg2rad(-10.0), 0.0, deg2rad(-5.0)};

  std::size_t num_ticks() const { return static_cast<std::size_t>(std::llround(duration / tick)); }

  void validate() const {
    if (!(tick >= 1e-3 && tick <= 0.1)) throw InvariantViolation("tick in [1e-3, 0.1] s", "scenario " + name);
    if (!(duration > 0.0)) throw InvariantViolation("positive duration", "scenario " + name);
    if (std::abs(duration / tick - std::round(duration / tick)) > 1e-9)
      throw InvariantViolation("duration is a whole number of ticks", "scenario " + name);
    gait.validate();
    if (motion != MotionKind::kStand && duration < gait.cycle_period - 1e-12)
      throw InvariantViolation("duration at least one gait cycle", "scenario " + name);
    if (!(payload >= 0.0)) throw InvariantViolation("non-negative payload", "scenario " + name);
    if (end_effector) {
      const auto& k = end_effector->keyframes;
      if (k.empty()) throw InvariantViolation("end-effector profile has keyframes", "scenario " + name);
      for (std::size_t i = 1; i < k.size(); ++i)
        if (!(k[i].t > k[i - 1].t)) throw InvariantViolation("keyframe times increasing", "scenario " + name);
    }
  }
};

/**
 * Piecewise cubic Hermite interpolation of keyframe offsets and angles.
 * Interior tangents are Catmull-Rom, end tangents zero; values are held
 * outside the keyframe span.
 */
inline std::pair<Vec3, Vec3> interpolate_keyframes(const std::vector<EeKeyframe>& k, double t) {
  if (t <= k.front().t) return {k.front().offset, k.front().ypr};
  if (t >= k.back().t) return {k.back().offset, k.back().ypr};
  std::size_t i = 0;
  while (!(t < k[i + 1].t)) ++i;
  const auto tangent = [&](std::size_t j, auto get) -> Vec3 {
    if (j == 0 || j + 1 == k.size()) return Vec3::Zero();
    return (get(k[j + 1]) - get(k[j - 1])) / (k[j + 1].t - k[j - 1].t);
  };
  const double h = k[i + 1].t - k[i].t;
  const double s = (t - k[i].t) / h;
  const double h00 = 2 * s * s * s - 3 * s * s + 1, h10 = s * s * s - 2 * s * s + s;
  const double h01 = -2 * s * s * s + 3 * s * s, h11 = s * s * s - s * s;
  const auto blend = [&](auto get) -> Vec3 {
    return h00 * get(k[i]) + h10 * h * tangent(i, get) + h01 * get(k[i + 1]) + h11 * h * tangent(i + 1, get);
  };
  return {blend([](const EeKeyframe& f) { return f.offset; }), blend([](const EeKeyframe& f) { return f.ypr; })};
}

/// World-frame end-effector target trajectory resolved from a profile.
class EeTrajectory {
 public:
  EeTrajectory(EeProfile profile, const Transform& initial_ee, const Transform& initial_body, BodyReference trunk)
      : profile_(std::move(profile)),
        initial_ee_(initial_ee),
        ee_in_body_(compose(invert(initial_body), initial_ee)),
        trunk_(std::move(trunk)) {}

  const EeProfile& profile() const { return profile_; }

  Transform pose(double t) const {
    const auto [off, ypr] = interpolate_keyframes(profile_.keyframes, t);
    const Mat3 rot = rotation_from_ypr(ypr.x(), ypr.y(), ypr.z());
    Transform out;
    switch (profile_.anchor) {
      case EeAnchor::kWorld:
        out.translation = off;
        out.rotation = rot;
        break;
      case EeAnchor::kInitialEe:
        out.translation = initial_ee_.translation + off;
        out.rotation = rot * initial_ee_.rotation;
        break;
      case EeAnchor::kTrunkReference: {
        const Mat3 yaw = rot_z(ypr.x());
        Transform local;
        local.translation = yaw * (ee_in_body_.translation + off);
        local.rotation = rot * ee_in_body_.rotation;
        out = compose(trunk_.transform(t), local);
        break;
      }
    }
    return out;
  }

  /// Pose with central-difference feed-forward velocities.
  PoseTarget target(double t) const {
    constexpr double h = 1e-5;
    const Transform a = pose(t - h), b = pose(t + h);
    PoseTarget out;
    out.pose = pose(t);
    out.linear_velocity = (b.translation - a.translation) / (2 * h);
    out.angular_velocity = rotation_log(b.rotation * a.rotation.transpose()) / (2 * h);
    return out;
  }

 private:
  EeProfile profile_;
  Transform initial_ee_;
  Transform ee_in_body_;
  BodyReference trunk_;
};

/// Footstep plan for a scenario's motion block.
inline FootstepPlan plan_scenario(const RobotConfig& cfg, const Scenario& sc) {
  switch (sc.motion) {
    case MotionKind::kTurnInPlace:
      return plan_turn_in_place(cfg, sc.gait, sc.total_yaw, sc.body_height, sc.start);
    case MotionKind::kWalk: {
      auto segs = sc.commands;
      for (auto& s : segs) s.command.body_height = sc.body_height;
      return plan_tripod_gait(cfg, sc.gait, segs, sc.duration, sc.start);
    }
    case MotionKind::kStand:
      break;
  }
  return plan_tripod_gait(cfg, sc.gait, std::vector<CommandSegment>{{0.0, sc.duration, BodyCommand{Vec2::Zero(), 0.0, sc.body_height}}},
                          sc.duration, sc.start);
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline std::string to_string(EeAnchor a) {
  switch (a) {
    case EeAnchor::kWorld: return "world";
    case EeAnchor::kInitialEe: return "initial_ee";
    case EeAnchor::kTrunkReference: return "trunk_reference";
  }
  return "world";
}

inline Json scenario_to_json(const Scenario& sc) {
  using namespace io;
  Json j;
  j["name"] = sc.name;
  j["description"] = sc.description;
  j["duration_s"] = sc.duration;
  j["tick_s"] = sc.tick;
  j["seed"] = sc.seed;
  j["body_height_m"] = sc.body_height;
  j["start"] = {{"x_m", sc.start.x}, {"y_m", sc.start.y}, {"yaw_deg", rad2deg(sc.start.yaw)}};
  j["gait"] = {{"cycle_period_s", sc.gait.cycle_period},
               {"duty_factor", sc.gait.duty_factor},
               {"step_height_m", sc.gait.step_height},
               {"step_length_max_m", sc.gait.step_length_max},
               {"stance_width_m", sc.gait.stance_width},
               {"max_speed_m_s", sc.gait.max_speed},
               {"max_yaw_rate_deg_s", rad2deg(sc.gait.max_yaw_rate)}};
  Json motion;
  switch (sc.motion) {
    case MotionKind::kStand: motion["type"] = "stand"; break;
    case MotionKind::kTurnInPlace:
      motion["type"] = "turn_in_place";
      motion["total_yaw_deg"] = rad2deg(sc.total_yaw);
      break;
    case MotionKind::kWalk: {
      motion["type"] = "walk";
      Json segs = Json::array();
      for (const auto& s : sc.commands)
        segs.push_back({{"t0_s", s.t0},
                        {"t1_s", s.t1},
                        {"vx_m_s", s.command.linear_velocity.x()},
                        {"vy_m_s", s.command.linear_velocity.y()},
                        {"yaw_rate_deg_s", rad2deg(s.command.yaw_rate)}});
      motion["segments"] = segs;
      break;
    }
  }
  j["motion"] = motion;
  if (sc.end_effector) {
    Json ee;
    ee["anchor"] = to_string(sc.end_effector->anchor);
    ee["rms_position_tolerance_m"] = sc.end_effector->rms_position_tolerance;
    ee["rms_angle_tolerance_deg"] = rad2deg(sc.end_effector->rms_angle_tolerance);
    Json keys = Json::array();
    for (const auto& k : sc.end_effector->keyframes)
      keys.push_back({{"t_s", k.t},
                      {"offset_m", vec3(k.offset)},
                      {"ypr_deg", Json::array({rad2deg(k.ypr.x()), rad2deg(k.ypr.y()), rad2deg(k.ypr.z())})}});
    ee["keyframes"] = keys;
    j["end_effector"] = ee;
  }
  j["payload_kg"] = sc.payload;
  j["priorities"] = {{"end_effector", sc.priorities.end_effector},
                     {"trunk", sc.priorities.trunk},
                     {"swing", sc.priorities.swing}};
  j["solver"] = {{"damping", sc.solver.damping},
                 {"rank_tolerance", sc.solver.rank_tolerance},
                 {"feedback_gain", sc.solver.feedback_gain},
                 {"pin_tolerance_m", sc.solver.pin_tolerance}};
  j["initial_posture"] = {
      {"arm_deg", array_json(sc.arm_angles, [](double a) { return rad2deg(a); })},
      {"manipulator_deg", array_json(sc.manipulator_angles, [](double a) { return rad2deg(a); })}};
  return j;
}

inline Scenario scenario_from_json(const Json& j) {
  using namespace io;
  Scenario sc;
  try {
    if (!j.contains("name") || !j.at("name").is_string()) throw Error(ErrorCode::kParseError, "missing key 'name'");
    sc.name = j.at("name").get<std::string>();
    if (j.contains("description")) sc.description = j.at("description").get<std::string>();
    sc.duration = get_number(j, "duration_s");
    sc.tick = get_number(j, "tick_s");
    if (j.contains("seed")) sc.seed = j.at("seed").get<std::uint64_t>();
    sc.body_height = get_number(j, "body_height_m");
    if (j.contains("start")) {
      const Json& s = j.at("start");
      sc.start = {get_number(s, "x_m"), get_number(s, "y_m"), deg2rad(get_number(s, "yaw_deg"))};
    }
    const Json& g = get_node(j, "gait");
    sc.gait.cycle_period = get_number(g, "cycle_period_s");
    sc.gait.duty_factor = get_number(g, "duty_factor");
    sc.gait.step_height = get_number(g, "step_height_m");
    sc.gait.step_length_max = get_number(g, "step_length_max_m");
    sc.gait.stance_width = get_number(g, "stance_width_m");
    sc.gait.max_speed = get_number(g, "max_speed_m_s");
    sc.gait.max_yaw_rate = deg2rad(get_number(g, "max_yaw_rate_deg_s"));

    const Json& m = get_node(j, "motion");
    const std::string type = get_node(m, "type").get<std::string>();
    if (type == "stand") {
      sc.motion = MotionKind::kStand;
    } else if (type == "turn_in_place") {
      sc.motion = MotionKind::kTurnInPlace;
      sc.total_yaw = deg2rad(get_number(m, "total_yaw_deg"));
    } else if (type == "walk") {
      sc.motion = MotionKind::kWalk;
      for (const Json& s : get_node(m, "segments")) {
        CommandSegment seg;
        seg.t0 = get_number(s, "t0_s");
        seg.t1 = get_number(s, "t1_s");
        seg.command.linear_velocity = Vec2(get_number(s, "vx_m_s"), get_number(s, "vy_m_s"));
        seg.command.yaw_rate = deg2rad(get_number(s, "yaw_rate_deg_s"));
        seg.command.body_height = sc.body_height;
        sc.commands.push_back(seg);
      }
    } else {
      throw Error(ErrorCode::kParseError, "unknown motion type '" + type + "'");
    }

    if (j.contains("end_effector")) {
      const Json& e = j.at("end_effector");
      EeProfile p;
      const std::string anchor = get_node(e, "anchor").get<std::string>();
      if (anchor == "world") p.anchor = EeAnchor::kWorld;
      else if (anchor == "initial_ee") p.anchor = EeAnchor::kInitialEe;
      else if (anchor == "trunk_reference") p.anchor = EeAnchor::kTrunkReference;
      else throw Error(ErrorCode::kParseError, "unknown end-effector anchor '" + anchor + "'");
      p.rms_position_tolerance = get_number(e, "rms_position_tolerance_m");
      p.rms_angle_tolerance = deg2rad(get_number(e, "rms_angle_tolerance_deg"));
      for (const Json& k : get_node(e, "keyframes")) {
        const auto ypr = get_array<3>(k, "ypr_deg");
        p.keyframes.push_back({get_number(k, "t_s"), get_vec3(k, "offset_m"),
                               Vec3(deg2rad(ypr[0]), deg2rad(ypr[1]), deg2rad(ypr[2]))});
      }
      sc.end_effector = p;
    }
    sc.payload = get_number(j, "payload_kg");
    if (j.contains("priorities")) {
      const Json& p = j.at("priorities");
      sc.priorities = {static_cast<int>(get_number(p, "end_effector")), static_cast<int>(get_number(p, "trunk")),
                       static_cast<int>(get_number(p, "swing"))};
    }
    if (j.contains("solver")) {
      const Json& s = j.at("solver");
      sc.solver.damping = get_number(s, "damping");
      sc.solver.rank_tolerance = get_number(s, "rank_tolerance");
      sc.solver.feedback_gain = get_number(s, "feedback_gain");
      sc.solver.pin_tolerance = get_number(s, "pin_tolerance_m");
    }
    if (j.contains("initial_posture")) {
      const Json& p = j.at("initial_posture");
      const auto arm = get_array<3>(p, "arm_deg");
      const auto man = get_array<3>(p, "manipulator_deg");
      for (int k = 0; k < 3; ++k) {
        sc.arm_angles[k] = deg2rad(arm[k]);
        sc.manipulator_angles[k] = deg2rad(man[k]);
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  sc.validate();
  return sc;
}

inline Scenario load_scenario(const std::string& path) {
  return scenario_from_json(parse_json_text(read_text_file(path)));
}

// ---------------------------------------------------------------------------
// Bundled scenarios
// ---------------------------------------------------------------------------

inline Scenario standstill_scenario() {
  Scenario sc;
  sc.name = "standstill";
  sc.description = "Stand on all six feet with the arm held at the working posture.";
  sc.duration = 4.0;
  sc.motion = MotionKind::kStand;
  return sc;
}

inline Scenario turn_in_place_scenario() {
  Scenario sc;
  sc.name = "turn_in_place_360";
  sc.description = "Full 360 degree turn in place on a tripod gait.";
  sc.motion = MotionKind::kTurnInPlace;
  sc.total_yaw = 2.0 * kPi;
  // 22 turning cycles plus one settling cycle at the default gait.
  sc.duration = 46.0;
  return sc;
}

inline Scenario walk_and_install_scenario() {
  Scenario sc;
  sc.name = "walk_and_install";
  sc.description = "Walk forward while lifting a wall panel and pressing it onto the installation plane.";
  sc.motion = MotionKind::kWalk;
  sc.commands = {{0.0, 10.0, BodyCommand{Vec2(0.1, 0.0), 0.0, 0.35}}};
  sc.duration = 12.0;
  sc.payload = 80.0;
  EeProfile p;
  p.anchor = EeAnchor::kTrunkReference;
  const double d = deg2rad(1.0);
  p.keyframes = {{0.0, Vec3(0.0, 0.0, 0.0), Vec3::Zero()},
                 {3.0, Vec3(-0.01, 0.0, 0.08), Vec3::Zero()},
                 {6.0, Vec3(-0.025, 0.0, 0.16), Vec3(0.0, -2.0 * d, 0.0)},
                 {9.0, Vec3(-0.04, 0.0, 0.20), Vec3(0.0, -3.0 * d, 0.0)},
                 {12.0, Vec3(-0.05, 0.0, 0.20), Vec3(0.0, -3.0 * d, 0.0)}};
  sc.end_effector = p;
  return sc;
}

inline Scenario walk_and_adjust_scenario() {
  Scenario sc;
  sc.name = "walk_and_adjust";
  sc.description = "Walk forward while correcting the installation pitch and yaw of the carried panel.";
  sc.motion = MotionKind::kWalk;
  sc.commands = {{0.0, 10.0, BodyCommand{Vec2(0.1, 0.0), 0.0, 0.35}}};
  sc.duration = 12.0;
  sc.payload = 60.0;
  EeProfile p;
  p.anchor = EeAnchor::kTrunkReference;
  const double d = deg2rad(1.0);
  p.keyframes = {{0.0, Vec3::Zero(), Vec3::Zero()},
                 {2.0, Vec3::Zero(), Vec3(0.0, 8.0 * d, 0.0)},
                 {4.0, Vec3::Zero(), Vec3(5.0 * d, 8.0 * d, 0.0)},
                 {6.0, Vec3::Zero(), Vec3(5.0 * d, -8.0 * d, 0.0)},
                 {8.0, Vec3::Zero(), Vec3(-5.0 * d, -8.0 * d, 0.0)},
                 {10.0, Vec3::Zero(), Vec3(-5.0 * d, 0.0, 0.0)},
                 {12.0, Vec3::Zero(), Vec3::Zero()}};
  sc.end_effector = p;
  return sc;
}

inline std::vector<Scenario> bundled_scenarios() {
  return {standstill_scenario(), turn_in_place_scenario(), walk_and_install_scenario(), walk_and_adjust_scenario()};
}

inline std::optional<Scenario> find_bundled_scenario(const std::string& name) {
  for (auto& s : bundled_scenarios())
    if (s.name == name) return s;
  return std::nullopt;
}

}  // namespace hexwall

#endif  // HEXWALL_SCENARIO_HPP_
