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

#ifndef HEXWALL_WBC_SOLVER_HPP_
#define HEXWALL_WBC_SOLVER_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "hexwall/errors.hpp"
#include "hexwall/folding_arm.hpp"
#include "hexwall/parallel_manipulator.hpp"
#include "hexwall/robot_config.hpp"
#include "hexwall/task_stack.hpp"
#include "hexwall/whole_body.hpp"

namespace hexwall {

inline constexpr double kGravity = 9.81;

struct SolverOptions {
  double damping = 1e-6;          // lambda of the damped pseudoinverse
  double rank_tolerance = 1e-9;   // singular values below this are treated as zero
  double feedback_gain = 10.0;    // 1/s, task-space error feedback
  double pin_tolerance = 1e-6;    // max admissible priority-0 residual
};

/// One priority level of a generic least-squares hierarchy.
struct HierarchyLevel {
  MatX jacobian;
  VecX target;
  VecX weights;  // per row; empty means all ones
};

struct HierarchyResult {
  VecX qdot;
  std::vector<double> residuals;   // ||J_k qdot - target_k|| per level
  std::vector<VecX> increments;    // contribution added at each level
};

namespace detail {

// Damped pseudoinverse applied to b, ignoring singular directions below tol.
inline VecX damped_solve(const MatX& a, const VecX& b, double damping, double tol) {
  if (a.rows() == 0) return VecX::Zero(a.cols());
  Eigen::JacobiSVD<MatX> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const VecX& sv = svd.singularValues();
  const VecX ub = svd.matrixU().transpose() * b;
  VecX coeff = VecX::Zero(sv.size());
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) coeff(i) = sv(i) / (sv(i) * sv(i) + damping * damping) * ub(i);
  return svd.matrixV() * coeff;
}

// Removes the row space of a from the projector n (a already projected).
inline void shrink_null_space(MatX& n, const MatX& a, double tol) {
  if (a.rows() == 0) return;
  Eigen::JacobiSVD<MatX> svd(a, Eigen::ComputeFullV);
  const VecX& sv = svd.singularValues();
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) <= tol) break;
    const VecX v = svd.matrixV().col(i);
    n -= v * v.transpose();
  }
}

}  // namespace detail

/**
 * Strict-priority damped least squares.
 *
 * Level k minimises ||W_k^(1/2) (J_k qdot - x_k)|| inside the null space of
 * levels 0..k-1, so lower levels never disturb higher ones. Within a level
 * rows are weighted; the remaining freedom is resolved by minimum norm.
 */
inline HierarchyResult solve_hierarchy(const std::vector<HierarchyLevel>& levels, int num_dof,
                                       const SolverOptions& opt = {}) {
  HierarchyResult res;
  res.qdot = VecX::Zero(num_dof);
  MatX null = MatX::Identity(num_dof, num_dof);
  for (const auto& lvl : levels) {
    VecX w = lvl.weights.size() == 0 ? VecX::Ones(lvl.jacobian.rows()) : lvl.weights;
    const VecX sw = w.cwiseSqrt();
    const MatX jn = lvl.jacobian * null;
    const MatX a = sw.asDiagonal() * jn;
    const VecX b = sw.asDiagonal() * (lvl.target - lvl.jacobian * res.qdot);
    VecX inc = detail::damped_solve(a, b, opt.damping, opt.rank_tolerance);
    inc = null * inc;  // keep the increment exactly in the current null space
    res.qdot += inc;
    res.increments.push_back(inc);
    detail::shrink_null_space(null, jn, opt.rank_tolerance);
  }
  for (const auto& lvl : levels) res.residuals.push_back((lvl.jacobian * res.qdot - lvl.target).norm());
  return res;
}

/// Static torque per joint needed to hold the arm and payload against
/// gravity (d(potential)/dq). Leg entries are zero.
inline VecX gravity_load_torques(const RobotConfig& cfg, const WholeBodyState& s, double payload_mass) {
  if (payload_mass < 0.0 || payload_mass > cfg.mass.payload_capacity + 1e-12)
    throw Error(ErrorCode::kOutOfRange, "payload outside [0, capacity]");
  VecX tau = VecX::Zero(kNumJoints);
  const auto frames = arm_chain_frames(cfg, s);
  struct PointMass {
    Vec3 p;
    double m;
    int after;  // index of the last chain joint upstream of the mass
  };
  std::vector<PointMass> masses;
  for (int k = 0; k < 3; ++k) {
    masses.push_back({frames[k].apply(Vec3(0.5 * cfg.arm.segment_lengths[k], 0.0, 0.0)), cfg.mass.arm_segment_mass[k], k});
    masses.push_back({frames[3 + k].apply(Vec3(0.5 * cfg.manipulator.segment_lengths[k], 0.0, 0.0)),
                      cfg.mass.manip_segment_mass[k], 3 + k});
  }
  masses.push_back({frames[6].translation, payload_mass, 5});
  for (int k = 0; k < 6; ++k) {
    const Vec3 axis = arm_chain_direction(cfg, k) * frames[k].rotation.col(2);
    double t = 0.0;
    for (const auto& pm : masses)
      if (pm.after >= k) t += pm.m * kGravity * axis.cross(pm.p - frames[k].translation).z();
    tau(kArmJoint0 + k) = t;
  }
  return tau;
}

/// Leg joint torques when the total weight is shared equally by the stance
/// feet as vertical ground reactions (tau = -J^T f).
inline VecX leg_support_torques(const RobotConfig& cfg, const WholeBodyState& s, double payload_mass) {
  VecX tau = VecX::Zero(kNumJoints);
  const int n = static_cast<int>(std::count(s.stance.begin(), s.stance.end(), true));
  if (n == 0) return tau;
  const Vec3 reaction(0.0, 0.0, cfg.mass.total_mass(payload_mass) * kGravity / n);
  for (int leg = 0; leg < kNumLegs; ++leg) {
    if (!s.stance[leg]) continue;
    const Mat3 jw = s.body_pose.rotation * cfg.mounts[leg].mount.rotation * leg_jacobian(cfg.legs[leg], s.leg_angles[leg]);
    tau.segment<3>(3 * leg) = -jw.transpose() * reaction;
  }
  return tau;
}

struct CylinderForceResult {
  std::array<double, kNumCylinders> forces{};
  std::vector<int> over_limit;   // cylinder indices whose |force| exceeds the cap
  double max_utilization = 0.0;  // max |force| / cap
};

/**
 * Cylinder forces realising the given joint torques: F = T / lever for
 * single-cylinder joints and the minimum-norm antagonistic split for the
 * manipulator modules. Throws LeverSingular for levers below 1e-6 m and,
 * when `enforce_limits` is set, ForceLimit for any force above its cap.
 */
inline CylinderForceResult map_torques_to_cylinders(const RobotConfig& cfg, const WholeBodyState& s,
                                                    const VecX& joint_torques, bool enforce_limits = true) {
  constexpr double kMinLever = 1e-6;
  CylinderForceResult out;
  auto single = [&](const FoldLinkGeometry& g, double theta, double torque, int cyl) {
    const double lever = fold_lever_arm(g, theta);
    if (std::abs(lever) < kMinLever) throw Error(ErrorCode::kLeverSingular, cylinder_name(cyl));
    out.forces[cyl] = torque / lever;
  };
  for (int i = 0; i < kNumLegs; ++i)
    for (int j = 0; j < 3; ++j) single(cfg.leg_actuators[j], s.leg_angles[i][j], joint_torques(3 * i + j), 3 * i + j);
  for (int k = 0; k < 3; ++k)
    single(cfg.arm.joints[k], s.arm_angles[k], joint_torques(kArmJoint0 + k), kArmCylinder0 + k);
  for (int k = 0; k < 3; ++k) {
    const auto& m = cfg.manipulator.modules[k];
    const ModuleLevers lv = module_levers(m, s.manipulator_angles[k]);
    if (lv.primary < kMinLever || lv.aux < kMinLever) throw Error(ErrorCode::kLeverSingular, cylinder_name(kModuleCylinder0 + 3 * k));
    const auto f = module_force_split(m, s.manipulator_angles[k], joint_torques(kManipJoint0 + k));
    for (int c = 0; c < 3; ++c) out.forces[kModuleCylinder0 + 3 * k + c] = f[c];
  }
  for (int c = 0; c < kNumCylinders; ++c) {
    const double u = std::abs(out.forces[c]) / cfg.limits.max_force[c];
    out.max_utilization = std::max(out.max_utilization, u);
    if (u > 1.0) out.over_limit.push_back(c);
  }
  if (enforce_limits && !out.over_limit.empty())
    throw Error(ErrorCode::kForceLimit, cylinder_name(out.over_limit.front()) + " exceeds its force cap");
  return out;
}

struct SolveResult {
  VecX joint_velocities;               // kNumDof: base twist, then joints
  std::vector<double> task_residuals;  // per priority level, before velocity scaling
  VecX required_torques;               // kNumJoints
  std::array<double, kNumCylinders> cylinder_forces{};
  bool velocity_saturated = false;
  bool force_saturated = false;
  bool saturated = false;
  double velocity_scale = 1.0;
  double force_utilization = 0.0;
  std::vector<VecX> level_increments;
};

/// Desired task-space velocity: feed-forward plus proportional feedback.
inline VecX task_velocity(const RobotConfig& cfg, const WholeBodyState& s, const Task& task, double gain) {
  VecX v(task.dim());
  v.head<3>() = task.target.linear_velocity;
  if (is_pose_task(task.kind)) v.tail<3>() = task.target.angular_velocity;
  if (task.kind == TaskKind::kStanceFootPin) v.head<3>().setZero();
  return v + gain * task_error(cfg, s, task);
}

/**
 * Whole-body velocity solve for a task stack, followed by the static
 * torque and cylinder-force report.
 */
inline SolveResult solve_priorities(const RobotConfig& cfg, const TaskStack& stack, const WholeBodyState& s,
                                    double payload_mass = 0.0, const SolverOptions& opt = {}) {
  if (stack.tasks.empty()) throw Error(ErrorCode::kOutOfRange, "empty task stack");
  stack.validate();
  std::vector<HierarchyLevel> levels;
  for (int p = 0; p < stack.num_levels(); ++p) {
    const auto tasks = stack.level(p);
    int rows = 0;
    for (const Task* t : tasks) rows += t->dim();
    HierarchyLevel lvl{MatX(rows, kNumDof), VecX(rows), VecX(rows)};
    int r = 0;
    for (const Task* t : tasks) {
      lvl.jacobian.middleRows(r, t->dim()) = task_jacobian(cfg, s, *t);
      lvl.target.segment(r, t->dim()) = task_velocity(cfg, s, *t, opt.feedback_gain);
      lvl.weights.segment(r, t->dim()).setConstant(t->weight);
      r += t->dim();
    }
    levels.push_back(std::move(lvl));
  }
  HierarchyResult h = solve_hierarchy(levels, kNumDof, opt);
  if (h.residuals.front() > opt.pin_tolerance)
    throw Error(ErrorCode::kInfeasiblePins, "priority-0 residual " + std::to_string(h.residuals.front()));

  SolveResult out;
  out.task_residuals = h.residuals;
  out.level_increments = std::move(h.increments);
  double scale = 1.0;
  for (int j = 0; j < kNumJoints; ++j) {
    const double v = std::abs(h.qdot(dof_of_joint(j)));
    if (v > cfg.limits.velocity_cap[j]) scale = std::min(scale, cfg.limits.velocity_cap[j] / v);
  }
  out.velocity_scale = scale;
  out.velocity_saturated = scale < 1.0;
  out.joint_velocities = h.qdot * scale;

  out.required_torques = gravity_load_torques(cfg, s, payload_mass) + leg_support_torques(cfg, s, payload_mass);
  const CylinderForceResult f = map_torques_to_cylinders(cfg, s, out.required_torques, false);
  out.cylinder_forces = f.forces;
  out.force_utilization = f.max_utilization;
  out.force_saturated = !f.over_limit.empty();
  out.saturated = out.velocity_saturated || out.force_saturated;
  return out;
}

}  // namespace hexwall

#endif  // HEXWALL_WBC_SOLVER_HPP_
