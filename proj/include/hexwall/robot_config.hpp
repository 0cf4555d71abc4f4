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

#ifndef HEXWALL_ROBOT_CONFIG_HPP_
#define HEXWALL_ROBOT_CONFIG_HPP_

#include <array>
#include <string>

#include "hexwall/errors.hpp"
#include "hexwall/folding_arm.hpp"
#include "hexwall/leg_kinematics.hpp"
#include "hexwall/parallel_manipulator.hpp"
#include "hexwall/transform.hpp"

namespace hexwall {

// Revolute joints: 18 leg joints (leg i, joint j -> 3i + j), then the three
// folding-arm joints and the three manipulator modules.
inline constexpr int kNumJoints = 24;
inline constexpr int kArmJoint0 = 18;
inline constexpr int kManipJoint0 = 21;

// Cylinders: one per leg joint, one per arm joint, and per module the
// primary cylinder KL followed by the auxiliary pair P, Q.
inline constexpr int kNumCylinders = 30;
inline constexpr int kArmCylinder0 = 18;
inline constexpr int kModuleCylinder0 = 21;

inline std::string joint_name(int j) {
  if (j < kArmJoint0) return "leg" + std::to_string(j / 3) + "_q" + std::to_string(j % 3 + 1);
  if (j < kManipJoint0) return "arm_q" + std::to_string(j - kArmJoint0 + 1);
  return "manip_q" + std::to_string(j - kManipJoint0 + 4);
}

inline std::string cylinder_name(int c) {
  if (c < kArmCylinder0) return "leg" + std::to_string(c / 3) + "_c" + std::to_string(c % 3 + 1);
  if (c < kModuleCylinder0) return "arm_c" + std::to_string(c - kArmCylinder0 + 1);
  const int m = (c - kModuleCylinder0) / 3;
  static constexpr const char* kSuffix[3] = {"kl", "p", "q"};
  return "module" + std::to_string(m + 1) + "_" + kSuffix[(c - kModuleCylinder0) % 3];
}

struct ActuatorLimits {
  std::array<JointLimit, kNumCylinders> stroke{};   // extension range (m)
  std::array<double, kNumCylinders> max_force{};    // N
  std::array<double, kNumJoints> velocity_cap{};    // rad/s

  void validate() const {
    for (int c = 0; c < kNumCylinders; ++c) {
      if (!(stroke[c].min < stroke[c].max)) throw InvariantViolation("stroke ordering", cylinder_name(c));
      if (!(max_force[c] > 0.0)) throw InvariantViolation("positive force cap", cylinder_name(c));
    }
    for (int j = 0; j < kNumJoints; ++j)
      if (!(velocity_cap[j] > 0.0)) throw InvariantViolation("positive velocity cap", joint_name(j));
  }
};

struct MassModel {
  double body_mass = 450.0;
  std::array<double, 3> arm_segment_mass{40.0, 30.0, 10.0};
  std::array<double, 3> manip_segment_mass{25.0, 20.0, 15.0};
  double payload_capacity = 100.0;
  Vec3 com_offset = Vec3::Zero();  // body frame

  double total_mass(double payload) const {
    double m = body_mass + payload;
    for (double s : arm_segment_mass) m += s;
    for (double s : manip_segment_mass) m += s;
    return m;
  }

  void validate() const {
    if (!(body_mass > 0.0)) throw InvariantViolation("positive body mass", "mass");
    for (double s : arm_segment_mass)
      if (s < 0.0) throw InvariantViolation("non-negative segment mass", "mass");
    for (double s : manip_segment_mass)
      if (s < 0.0) throw InvariantViolation("non-negative segment mass", "mass");
    if (payload_capacity < 0.0) throw InvariantViolation("non-negative payload capacity", "mass");
  }
};

/// Complete geometric and actuation description of the robot.
struct RobotConfig {
  std::array<LegGeometry, kNumLegs> legs;
  std::array<LegMount, kNumLegs> mounts;
  std::array<FoldLinkGeometry, 3> leg_actuators;  // coxa, femur, tibia (shared by all legs)
  FoldingArm arm;
  Manipulator manipulator;
  ActuatorLimits limits;
  MassModel mass;

  void validate() const {
    for (int i = 0; i < kNumLegs; ++i) {
      const std::string where = "leg " + std::to_string(i);
      legs[i].validate(where);
      if (mounts[i].leg_id != i) throw InvariantViolation("mount leg ids ordered 0..5", where);
      if (orthonormality_error(mounts[i].mount.rotation) > 1e-9 || mounts[i].mount.rotation.determinant() < 0.0)
        throw InvariantViolation("orthonormal mount rotation", where);
      for (int j = 0; j < 3; ++j) {
        const auto& act = leg_actuators[j].joint_limits;
        const auto& lim = legs[i].joint_limits[j];
        if (lim.min < act.min - 1e-12 || lim.max > act.max + 1e-12)
          throw InvariantViolation("leg joint range within actuator range", where + " joint " + std::to_string(j + 1));
      }
    }
    for (int j = 0; j < 3; ++j) leg_actuators[j].validate("leg actuator " + std::to_string(j + 1));
    if (orthonormality_error(arm.mount.rotation) > 1e-9) throw InvariantViolation("orthonormal mount rotation", "arm");
    arm.validate();
    manipulator.validate();
    limits.validate();
    mass.validate();
  }
};

/// Joint range of revolute joint j (index per the layout above).
inline JointLimit joint_limit(const RobotConfig& cfg, int j) {
  if (j < kArmJoint0) return cfg.legs[j / 3].joint_limits[j % 3];
  if (j < kManipJoint0) return cfg.arm.joints[j - kArmJoint0].joint_limits;
  return cfg.manipulator.modules[j - kManipJoint0].joint_limits;
}

/**
 * Synthetic default robot. None of these numbers are measured values; they
 * are chosen to close every linkage triangle exactly, keep the legs'
 * horizontal reach positive over their whole range, and give each
 * manipulator module +/-50 deg of pitch.
 */
inline RobotConfig default_robot_config() {
  RobotConfig cfg;
  LegGeometry leg;
  leg.a1 = 0.18;
  leg.a2 = 0.50;
  leg.a3 = 0.50;
  leg.joint_limits = {{{deg2rad(-50.0), deg2rad(50.0)}, {deg2rad(-45.0), deg2rad(70.0)}, {deg2rad(-150.0), deg2rad(-5.0)}}};
  cfg.legs.fill(leg);
  cfg.mounts = hexagon_mounts(0.35, deg2rad(30.0), 0.0);

  cfg.leg_actuators = {
      FoldLinkGeometry::make(0.15, 0.08, deg2rad(90.0), {deg2rad(-50.0), deg2rad(50.0)}),
      FoldLinkGeometry::make(0.30, 0.10, deg2rad(75.0), {deg2rad(-45.0), deg2rad(70.0)}),
      FoldLinkGeometry::make(0.30, 0.10, deg2rad(160.0), {deg2rad(-150.0), deg2rad(-5.0)}),
  };

  cfg.arm.joints = {
      FoldLinkGeometry::make(0.30, 0.12, deg2rad(60.0), {deg2rad(0.0), deg2rad(90.0)}, 1),
      FoldLinkGeometry::make(0.25, 0.10, deg2rad(50.0), {deg2rad(0.0), deg2rad(110.0)}, -1),
      FoldLinkGeometry::make(0.20, 0.08, deg2rad(70.0), {deg2rad(-40.0), deg2rad(80.0)}, 1),
  };
  cfg.arm.segment_lengths = {0.45, 0.40, 0.15};
  cfg.arm.rest_offsets = {deg2rad(10.0), deg2rad(60.0), deg2rad(-30.0)};
  cfg.arm.mount.rotation = rot_x(kPi / 2.0);
  cfg.arm.mount.translation = Vec3(0.40, 0.0, 0.10);

  const ModuleGeometry module =
      ModuleGeometry::make(0.12, 0.10, deg2rad(100.0), deg2rad(80.0), {deg2rad(-50.0), deg2rad(50.0)});
  cfg.manipulator.modules.fill(module);
  cfg.manipulator.segment_lengths = {0.40, 0.40, 0.30};
  cfg.manipulator.total_pitch_limit = deg2rad(150.0);

  // Stroke ranges: attainable extension over each joint range plus 10 mm.
  constexpr double kMargin = 0.01;
  auto fold_stroke = [&](const FoldLinkGeometry& g) {
    return JointLimit{fold_extension(g, g.joint_limits.min) - kMargin, fold_extension(g, g.joint_limits.max) + kMargin};
  };
  for (int i = 0; i < kNumLegs; ++i)
    for (int j = 0; j < 3; ++j) cfg.limits.stroke[3 * i + j] = fold_stroke(cfg.leg_actuators[j]);
  for (int j = 0; j < 3; ++j) cfg.limits.stroke[kArmCylinder0 + j] = fold_stroke(cfg.arm.joints[j]);
  for (int k = 0; k < 3; ++k) {
    const auto& m = cfg.manipulator.modules[k];
    const double p0 = module_primary_extension(m, m.joint_limits.min);
    const double p1 = module_primary_extension(m, m.joint_limits.max);
    const double a0 = module_aux_extension(m, m.joint_limits.max);
    const double a1 = module_aux_extension(m, m.joint_limits.min);
    cfg.limits.stroke[kModuleCylinder0 + 3 * k] = {p0 - kMargin, p1 + kMargin};
    cfg.limits.stroke[kModuleCylinder0 + 3 * k + 1] = {a0 - kMargin, a1 + kMargin};
    cfg.limits.stroke[kModuleCylinder0 + 3 * k + 2] = {a0 - kMargin, a1 + kMargin};
  }
  cfg.limits.max_force.fill(120000.0);
  for (int j = 0; j < kNumJoints; ++j) cfg.limits.velocity_cap[j] = j < kArmJoint0 ? 2.0 : 1.0;
  return cfg;
}

}  // namespace hexwall

#endif  // HEXWALL_ROBOT_CONFIG_HPP_
