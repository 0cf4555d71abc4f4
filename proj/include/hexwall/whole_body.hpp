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

#ifndef HEXWALL_WHOLE_BODY_HPP_
#define HEXWALL_WHOLE_BODY_HPP_

#include <array>

#include <Eigen/Dense>

#include "hexwall/folding_arm.hpp"
#include "hexwall/leg_kinematics.hpp"
#include "hexwall/parallel_manipulator.hpp"
#include "hexwall/robot_config.hpp"
#include "hexwall/task_stack.hpp"
#include "hexwall/transform.hpp"

namespace hexwall {

// Generalised velocity: floating-base linear and angular velocity (world
// frame), then the 24 revolute joints.
inline constexpr int kNumDof = 6 + kNumJoints;
inline constexpr int kBaseLinear = 0;
inline constexpr int kBaseAngular = 3;
inline constexpr int dof_of_joint(int j) { return 6 + j; }

using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

struct WholeBodyState {
  Transform body_pose;
  std::array<LegJointAngles, kNumLegs> leg_angles{};
  std::array<double, 3> arm_angles{};
  std::array<double, 3> manipulator_angles{};
  std::array<bool, kNumLegs> stance{true, true, true, true, true, true};

  double joint(int j) const {
    if (j < kArmJoint0) return leg_angles[j / 3][j % 3];
    if (j < kManipJoint0) return arm_angles[j - kArmJoint0];
    return manipulator_angles[j - kManipJoint0];
  }

  double& joint(int j) {
    if (j < kArmJoint0) return leg_angles[j / 3][j % 3];
    if (j < kManipJoint0) return arm_angles[j - kArmJoint0];
    return manipulator_angles[j - kManipJoint0];
  }
};

inline Vec3 foot_world(const RobotConfig& cfg, const WholeBodyState& s, int leg) {
  return s.body_pose.apply(foot_in_body_frame(cfg.mounts[leg], cfg.legs[leg], s.leg_angles[leg]));
}

/// World frames of the six arm/manipulator joints (index 0..5) and the tip (6).
/// Each frame's z axis, times the joint direction sign, is the joint axis.
inline std::array<Transform, 7> arm_chain_frames(const RobotConfig& cfg, const WholeBodyState& s) {
  std::array<Transform, 7> out;
  const Transform base = compose(s.body_pose, cfg.arm.mount);
  const auto arm = fold_arm_frames(cfg.arm, s.arm_angles);
  for (int k = 0; k < 3; ++k) out[k] = compose(base, arm[k]);
  const Transform manip_base = compose(base, arm[3]);
  const auto man = manipulator_frames(cfg.manipulator, s.manipulator_angles);
  for (int k = 0; k < 3; ++k) out[3 + k] = compose(manip_base, man[k]);
  out[6] = compose(manip_base, man[3]);
  return out;
}

inline Transform end_effector_pose(const RobotConfig& cfg, const WholeBodyState& s) {
  return arm_chain_frames(cfg, s)[6];
}

inline Vec3 com_world(const RobotConfig& cfg, const WholeBodyState& s) {
  return s.body_pose.apply(cfg.mass.com_offset);
}

// Sign that maps a positive joint angle onto rotation about the frame's z axis.
inline double arm_chain_direction(const RobotConfig& cfg, int k) {
  return k < 3 ? static_cast<double>(cfg.arm.joints[k].direction) : 1.0;
}

/// Cylinder extensions of all 30 cylinders at the current joint angles.
inline std::array<double, kNumCylinders> cylinder_extensions(const RobotConfig& cfg, const WholeBodyState& s) {
  std::array<double, kNumCylinders> out{};
  for (int i = 0; i < kNumLegs; ++i)
    for (int j = 0; j < 3; ++j) out[3 * i + j] = fold_extension(cfg.leg_actuators[j], s.leg_angles[i][j]);
  for (int k = 0; k < 3; ++k) out[kArmCylinder0 + k] = fold_extension(cfg.arm.joints[k], s.arm_angles[k]);
  for (int k = 0; k < 3; ++k) {
    const auto& m = cfg.manipulator.modules[k];
    const double th = s.manipulator_angles[k];
    out[kModuleCylinder0 + 3 * k] = module_primary_extension(m, th);
    const double aux = module_aux_extension(m, th);
    out[kModuleCylinder0 + 3 * k + 1] = aux;
    out[kModuleCylinder0 + 3 * k + 2] = aux;
  }
  return out;
}

/// State displaced by `delta` along generalised coordinate `dof`. Base
/// angular coordinates rotate the body about world axes through its origin.
inline WholeBodyState displaced(const WholeBodyState& s, int dof, double delta) {
  WholeBodyState out = s;
  if (dof < 3) {
    out.body_pose.translation[dof] += delta;
  } else if (dof < 6) {
    const Vec3 axis = Vec3::Unit(dof - 3);
    out.body_pose.rotation = Eigen::AngleAxisd(delta, axis).toRotationMatrix() * s.body_pose.rotation;
  } else {
    out.joint(dof - 6) += delta;
  }
  return out;
}

/// Explicit Euler step of the full generalised velocity.
inline WholeBodyState integrate(const WholeBodyState& s, const VecX& qdot, double dt) {
  WholeBodyState out = s;
  out.body_pose.translation += qdot.segment<3>(kBaseLinear) * dt;
  const Vec3 w = qdot.segment<3>(kBaseAngular) * dt;
  if (w.norm() > 0.0)
    out.body_pose.rotation = Eigen::AngleAxisd(w.norm(), w.normalized()).toRotationMatrix() * s.body_pose.rotation;
  for (int j = 0; j < kNumJoints; ++j) out.joint(j) += qdot(dof_of_joint(j)) * dt;
  return out;
}

/// Current value of a task's forward map: a point, or a pose.
inline Transform task_value(const RobotConfig& cfg, const WholeBodyState& s, const Task& task) {
  switch (task.kind) {
    case TaskKind::kTrunkPose: return s.body_pose;
    case TaskKind::kEndEffectorPose: return end_effector_pose(cfg, s);
    default: return Transform::from_translation(foot_world(cfg, s, task.leg));
  }
}

/**
 * Analytic task Jacobian (rows: task space; columns: all kNumDof).
 *
 * Point tasks have 3 linear rows; pose tasks add 3 angular-velocity rows
 * (world frame).
 */
inline MatX task_jacobian(const RobotConfig& cfg, const WholeBodyState& s, const Task& task) {
  MatX j = MatX::Zero(task.dim(), kNumDof);
  const Vec3 pb = s.body_pose.translation;
  switch (task.kind) {
    case TaskKind::kTrunkPose:
      j.block<3, 3>(0, kBaseLinear).setIdentity();
      j.block<3, 3>(3, kBaseAngular).setIdentity();
      break;
    case TaskKind::kStanceFootPin:
    case TaskKind::kSwingFootPosition: {
      const int leg = task.leg;
      const Vec3 pf = foot_world(cfg, s, leg);
      j.block<3, 3>(0, kBaseLinear).setIdentity();
      j.block<3, 3>(0, kBaseAngular) = -skew(pf - pb);
      j.block<3, 3>(0, dof_of_joint(3 * leg)) =
          s.body_pose.rotation * cfg.mounts[leg].mount.rotation * leg_jacobian(cfg.legs[leg], s.leg_angles[leg]);
      break;
    }
    case TaskKind::kEndEffectorPose: {
      const auto frames = arm_chain_frames(cfg, s);
      const Vec3 pe = frames[6].translation;
      j.block<3, 3>(0, kBaseLinear).setIdentity();
      j.block<3, 3>(0, kBaseAngular) = -skew(pe - pb);
      j.block<3, 3>(3, kBaseAngular).setIdentity();
      for (int k = 0; k < 6; ++k) {
        const Vec3 axis = arm_chain_direction(cfg, k) * frames[k].rotation.col(2);
        const int col = dof_of_joint(kArmJoint0 + k);
        j.block<3, 1>(0, col) = axis.cross(pe - frames[k].translation);
        j.block<3, 1>(3, col) = axis;
      }
      break;
    }
  }
  return j;
}

/// Task-space error (target minus current): position, then rotation vector.
inline VecX task_error(const RobotConfig& cfg, const WholeBodyState& s, const Task& task) {
  const Transform cur = task_value(cfg, s, task);
  VecX e(task.dim());
  e.head<3>() = task.target.pose.translation - cur.translation;
  if (is_pose_task(task.kind)) e.tail<3>() = rotation_log(task.target.pose.rotation * cur.rotation.transpose());
  return e;
}

}  // namespace hexwall

#endif  // HEXWALL_WHOLE_BODY_HPP_
