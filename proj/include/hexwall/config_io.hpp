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

#ifndef HEXWALL_CONFIG_IO_HPP_
#define HEXWALL_CONFIG_IO_HPP_

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "hexwall/errors.hpp"
#include "hexwall/robot_config.hpp"

namespace hexwall {

using Json = nlohmann::ordered_json;

// Robot config files are JSON trees. Lengths are metres, forces newtons,
// and every angle is in degrees (keys ending in _deg); radians are used
// everywhere past this boundary.
namespace io {

inline double get_number(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::kParseError, std::string("missing key '") + key + "'");
  if (!j.at(key).is_number()) throw Error(ErrorCode::kParseError, std::string("key '") + key + "' is not a number");
  return j.at(key).get<double>();
}

inline const Json& get_node(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::kParseError, std::string("missing key '") + key + "'");
  return j.at(key);
}

template <std::size_t N>
std::array<double, N> get_array(const Json& j, const char* key) {
  const Json& a = get_node(j, key);
  if (!a.is_array() || a.size() != N)
    throw Error(ErrorCode::kParseError, std::string("key '") + key + "' must be an array of " + std::to_string(N));
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    if (!a[i].is_number()) throw Error(ErrorCode::kParseError, std::string("non-numeric entry in '") + key + "'");
    out[i] = a[i].get<double>();
  }
  return out;
}

inline Json limit_deg(const JointLimit& l) { return Json::array({rad2deg(l.min), rad2deg(l.max)}); }

inline JointLimit get_limit_deg(const Json& j, const char* key) {
  const auto a = get_array<2>(j, key);
  return {deg2rad(a[0]), deg2rad(a[1])};
}

inline Json vec3(const Vec3& v) { return Json::array({v.x(), v.y(), v.z()}); }

inline Vec3 get_vec3(const Json& j, const char* key) {
  const auto a = get_array<3>(j, key);
  return {a[0], a[1], a[2]};
}

inline Json transform_json(const Transform& t) {
  const YawPitchRoll ypr = ypr_from_rotation(t.rotation);
  Json j;
  j["position_m"] = vec3(t.translation);
  j["ypr_deg"] = Json::array({rad2deg(ypr.yaw), rad2deg(ypr.pitch), rad2deg(ypr.roll)});
  return j;
}

inline Transform get_transform(const Json& j) {
  Transform t;
  t.translation = get_vec3(j, "position_m");
  const auto ypr = get_array<3>(j, "ypr_deg");
  t.rotation = rotation_from_ypr(deg2rad(ypr[0]), deg2rad(ypr[1]), deg2rad(ypr[2]));
  return t;
}

inline Json linkage_json(const FoldLinkGeometry& g) {
  Json j;
  j["l_anchor_a_m"] = g.l_anchor_a;
  j["l_anchor_b_m"] = g.l_anchor_b;
  j["l_cyl_rest_m"] = g.l_cyl_rest;
  j["rest_angle_deg"] = rad2deg(g.rest_angle);
  j["joint_limits_deg"] = limit_deg(g.joint_limits);
  j["direction"] = g.direction;
  return j;
}

inline FoldLinkGeometry get_linkage(const Json& j) {
  FoldLinkGeometry g;
  g.l_anchor_a = get_number(j, "l_anchor_a_m");
  g.l_anchor_b = get_number(j, "l_anchor_b_m");
  g.l_cyl_rest = get_number(j, "l_cyl_rest_m");
  g.rest_angle = deg2rad(get_number(j, "rest_angle_deg"));
  g.joint_limits = get_limit_deg(j, "joint_limits_deg");
  g.direction = static_cast<int>(get_number(j, "direction"));
  return g;
}

inline Json module_json(const ModuleGeometry& g) {
  Json j;
  j["l_LO_m"] = g.l_LO;
  j["l_RO_m"] = g.l_RO;
  j["l_KL_rest_m"] = g.l_KL_rest;
  j["l_MR_rest_m"] = g.l_MR_rest;
  j["ang_KLO_deg"] = rad2deg(g.ang_KLO);
  j["ang_KOL_deg"] = rad2deg(g.ang_KOL);
  j["ang_MOR_deg"] = rad2deg(g.ang_MOR);
  j["ang_MRO_deg"] = rad2deg(g.ang_MRO);
  j["joint_limits_deg"] = limit_deg(g.joint_limits);
  return j;
}

inline ModuleGeometry get_module(const Json& j) {
  ModuleGeometry g;
  g.l_LO = get_number(j, "l_LO_m");
  g.l_RO = get_number(j, "l_RO_m");
  g.l_KL_rest = get_number(j, "l_KL_rest_m");
  g.l_MR_rest = get_number(j, "l_MR_rest_m");
  g.ang_KLO = deg2rad(get_number(j, "ang_KLO_deg"));
  g.ang_KOL = deg2rad(get_number(j, "ang_KOL_deg"));
  g.ang_MOR = deg2rad(get_number(j, "ang_MOR_deg"));
  g.ang_MRO = deg2rad(get_number(j, "ang_MRO_deg"));
  g.joint_limits = get_limit_deg(j, "joint_limits_deg");
  return g;
}

template <typename T, std::size_t N, typename F>
Json array_json(const std::array<T, N>& a, F&& f) {
  Json out = Json::array();
  for (const auto& x : a) out.push_back(f(x));
  return out;
}

inline const Json& get_list(const Json& j, const char* key, std::size_t n) {
  const Json& a = get_node(j, key);
  if (!a.is_array() || a.size() != n)
    throw Error(ErrorCode::kParseError, std::string("key '") + key + "' must list " + std::to_string(n) + " entries");
  return a;
}

}  // namespace io

inline Json robot_config_to_json(const RobotConfig& cfg) {
  using namespace io;
  Json j;
  Json legs = Json::array();
  for (int i = 0; i < kNumLegs; ++i) {
    Json leg;
    leg["a1_m"] = cfg.legs[i].a1;
    leg["a2_m"] = cfg.legs[i].a2;
    leg["a3_m"] = cfg.legs[i].a3;
    leg["joint_limits_deg"] = array_json(cfg.legs[i].joint_limits, limit_deg);
    leg["mount"] = transform_json(cfg.mounts[i].mount);
    legs.push_back(leg);
  }
  j["legs"] = legs;
  j["leg_actuators"] = array_json(cfg.leg_actuators, linkage_json);

  Json arm;
  arm["mount"] = transform_json(cfg.arm.mount);
  arm["segment_lengths_m"] = cfg.arm.segment_lengths;
  arm["rest_offsets_deg"] = array_json(cfg.arm.rest_offsets, [](double a) { return rad2deg(a); });
  arm["joints"] = array_json(cfg.arm.joints, linkage_json);
  j["folding_arm"] = arm;

  Json man;
  man["segment_lengths_m"] = cfg.manipulator.segment_lengths;
  man["total_pitch_limit_deg"] = rad2deg(cfg.manipulator.total_pitch_limit);
  man["modules"] = array_json(cfg.manipulator.modules, module_json);
  j["manipulator"] = man;

  Json lim;
  lim["stroke_m"] = array_json(cfg.limits.stroke, [](const JointLimit& l) { return Json::array({l.min, l.max}); });
  lim["max_force_N"] = cfg.limits.max_force;
  lim["velocity_cap_rad_s"] = cfg.limits.velocity_cap;
  j["actuator_limits"] = lim;

  Json mass;
  mass["body_kg"] = cfg.mass.body_mass;
  mass["arm_segments_kg"] = cfg.mass.arm_segment_mass;
  mass["manipulator_segments_kg"] = cfg.mass.manip_segment_mass;
  mass["payload_capacity_kg"] = cfg.mass.payload_capacity;
  mass["com_offset_m"] = vec3(cfg.mass.com_offset);
  j["mass"] = mass;
  return j;
}

/// Parses and validates; throws ParseError or InvariantViolation.
inline RobotConfig robot_config_from_json(const Json& j) {
  using namespace io;
  RobotConfig cfg;
  try {
    const Json& legs = get_list(j, "legs", kNumLegs);
    for (int i = 0; i < kNumLegs; ++i) {
      const Json& leg = legs[i];
      cfg.legs[i].a1 = get_number(leg, "a1_m");
      cfg.legs[i].a2 = get_number(leg, "a2_m");
      cfg.legs[i].a3 = get_number(leg, "a3_m");
      const Json& lims = get_list(leg, "joint_limits_deg", 3);
      for (int k = 0; k < 3; ++k) {
        if (!lims[k].is_array() || lims[k].size() != 2) throw Error(ErrorCode::kParseError, "leg joint limit must be [min, max]");
        cfg.legs[i].joint_limits[k] = {deg2rad(lims[k][0].get<double>()), deg2rad(lims[k][1].get<double>())};
      }
      cfg.mounts[i].leg_id = i;
      cfg.mounts[i].mount = get_transform(get_node(leg, "mount"));
    }
    const Json& acts = get_list(j, "leg_actuators", 3);
    for (int k = 0; k < 3; ++k) cfg.leg_actuators[k] = get_linkage(acts[k]);

    const Json& arm = get_node(j, "folding_arm");
    cfg.arm.mount = get_transform(get_node(arm, "mount"));
    cfg.arm.segment_lengths = get_array<3>(arm, "segment_lengths_m");
    const auto offs = get_array<3>(arm, "rest_offsets_deg");
    for (int k = 0; k < 3; ++k) cfg.arm.rest_offsets[k] = deg2rad(offs[k]);
    const Json& joints = get_list(arm, "joints", 3);
    for (int k = 0; k < 3; ++k) cfg.arm.joints[k] = get_linkage(joints[k]);

    const Json& man = get_node(j, "manipulator");
    cfg.manipulator.segment_lengths = get_array<3>(man, "segment_lengths_m");
    cfg.manipulator.total_pitch_limit = deg2rad(get_number(man, "total_pitch_limit_deg"));
    const Json& mods = get_list(man, "modules", 3);
    for (int k = 0; k < 3; ++k) cfg.manipulator.modules[k] = get_module(mods[k]);

    const Json& lim = get_node(j, "actuator_limits");
    const Json& stroke = get_list(lim, "stroke_m", kNumCylinders);
    for (int c = 0; c < kNumCylinders; ++c) {
      if (!stroke[c].is_array() || stroke[c].size() != 2) throw Error(ErrorCode::kParseError, "stroke must be [min, max]");
      cfg.limits.stroke[c] = {stroke[c][0].get<double>(), stroke[c][1].get<double>()};
    }
    cfg.limits.max_force = get_array<kNumCylinders>(lim, "max_force_N");
    cfg.limits.velocity_cap = get_array<kNumJoints>(lim, "velocity_cap_rad_s");

    const Json& mass = get_node(j, "mass");
    cfg.mass.body_mass = get_number(mass, "body_kg");
    cfg.mass.arm_segment_mass = get_array<3>(mass, "arm_segments_kg");
    cfg.mass.manip_segment_mass = get_array<3>(mass, "manipulator_segments_kg");
    cfg.mass.payload_capacity = get_number(mass, "payload_capacity_kg");
    cfg.mass.com_offset = get_vec3(mass, "com_offset_m");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
  cfg.validate();
  return cfg;
}

inline std::string save_robot_config(const RobotConfig& cfg) { return robot_config_to_json(cfg).dump(2) + "\n"; }

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, e.what());
  }
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline RobotConfig load_config(const std::string& path) {
  return robot_config_from_json(parse_json_text(read_text_file(path)));
}

}  // namespace hexwall

#endif  // HEXWALL_CONFIG_IO_HPP_
