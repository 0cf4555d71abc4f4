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

#ifndef HEXWALL_SIMULATOR_HPP_
#define HEXWALL_SIMULATOR_HPP_

#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "hexwall/scenario.hpp"
#include "hexwall/support_polygon.hpp"
#include "hexwall/wbc_solver.hpp"
#include "hexwall/whole_body.hpp"

namespace hexwall {

inline constexpr int kNumPriorityColumns = 4;

/// One tick of the trajectory log.
struct LogRow {
  double time = 0.0;
  Vec3 body_position = Vec3::Zero();
  Vec3 body_ypr = Vec3::Zero();  // yaw unwrapped across ticks
  std::array<double, kNumJoints> joints{};
  std::array<double, kNumCylinders> extensions{};
  std::array<double, kNumCylinders> forces{};
  double stability_margin = 0.0;
  Vec2 com_xy = Vec2::Zero();
  std::array<bool, kNumLegs> stance{};
  std::array<Vec3, kNumLegs> feet{};
  Vec3 ee_position = Vec3::Zero();
  Vec3 ee_ypr = Vec3::Zero();
  bool ee_active = false;
  Vec3 ee_target_position = Vec3::Zero();
  Vec3 ee_target_ypr = Vec3::Zero();
  double ee_position_error = 0.0;
  double ee_angle_error = 0.0;
  std::array<double, kNumPriorityColumns> residuals{};  // NaN when the level is absent
  double force_utilization = 0.0;
  bool saturated = false;
  double velocity_scale = 1.0;
  double foot_slip = 0.0;  // max stance-foot deviation from its foothold
};

struct TrajectoryLog {
  std::string scenario;
  double tick = 0.0;
  std::vector<LogRow> rows;
};

/// Fixed CSV column order.
inline std::vector<std::string> log_columns() {
  std::vector<std::string> c = {"time_s", "body_x_m", "body_y_m", "body_z_m", "body_yaw_rad", "body_pitch_rad",
                                "body_roll_rad"};
  for (int j = 0; j < kNumJoints; ++j) c.push_back(joint_name(j) + "_rad");
  for (int k = 0; k < kNumCylinders; ++k) c.push_back(cylinder_name(k) + "_ext_m");
  for (int k = 0; k < kNumCylinders; ++k) c.push_back(cylinder_name(k) + "_force_N");
  c.insert(c.end(), {"stability_margin_m", "com_x_m", "com_y_m"});
  for (int i = 0; i < kNumLegs; ++i) c.push_back("leg" + std::to_string(i) + "_stance");
  for (int i = 0; i < kNumLegs; ++i)
    for (const char* ax : {"x", "y", "z"}) c.push_back("foot" + std::to_string(i) + "_" + ax + "_m");
  c.insert(c.end(), {"ee_x_m", "ee_y_m", "ee_z_m", "ee_yaw_rad", "ee_pitch_rad", "ee_roll_rad", "ee_active",
                     "ee_target_x_m", "ee_target_y_m", "ee_target_z_m", "ee_target_yaw_rad", "ee_target_pitch_rad",
                     "ee_target_roll_rad", "ee_position_error_m", "ee_angle_error_rad"});
  for (int p = 0; p < kNumPriorityColumns; ++p) c.push_back("residual_p" + std::to_string(p));
  c.insert(c.end(), {"force_utilization", "saturated", "velocity_scale", "foot_slip_m"});
  return c;
}

namespace detail {

inline void put_number(std::string& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out += buf;
}

}  // namespace detail

inline std::string log_row_csv(const LogRow& r) {
  std::string s;
  s.reserve(4096);
  bool first = true;
  const auto num = [&](double v) {
    if (!first) s += ',';
    first = false;
    detail::put_number(s, v);
  };
  const auto vec = [&](const auto& v) {
    for (int i = 0; i < static_cast<int>(v.size()); ++i) num(v[i]);
  };
  num(r.time);
  vec(r.body_position);
  vec(r.body_ypr);
  vec(r.joints);
  vec(r.extensions);
  vec(r.forces);
  num(r.stability_margin);
  vec(r.com_xy);
  for (bool b : r.stance) num(b ? 1 : 0);
  for (const auto& f : r.feet) vec(f);
  vec(r.ee_position);
  vec(r.ee_ypr);
  num(r.ee_active ? 1 : 0);
  vec(r.ee_target_position);
  vec(r.ee_target_ypr);
  num(r.ee_position_error);
  num(r.ee_angle_error);
  vec(r.residuals);
  num(r.force_utilization);
  num(r.saturated ? 1 : 0);
  num(r.velocity_scale);
  num(r.foot_slip);
  return s;
}

inline void write_log_csv(std::ostream& os, const TrajectoryLog& log) {
  const auto cols = log_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& r : log.rows) os << log_row_csv(r) << '\n';
}

struct MetricsSummary {
  std::string scenario;
  std::size_t ticks = 0;
  double min_stability_margin = 0.0;
  double mean_stability_margin = 0.0;
  std::array<double, kNumPriorityColumns> max_residual{};
  double max_force_utilization = 0.0;
  double displacement = 0.0;        // horizontal body-centre displacement
  double yaw = 0.0;                 // net unwrapped body yaw
  double commanded_displacement = 0.0;
  double commanded_yaw = 0.0;
  std::size_t saturated_ticks = 0;
  double ee_rms_position_error = 0.0;
  double ee_rms_angle_error = 0.0;
  std::size_t ee_samples = 0;
  double max_foot_slip = 0.0;
  double body_height_min = 0.0;
  double body_height_max = 0.0;
};

/// Log summary; absent priority levels report 0.
inline MetricsSummary emit_metrics(const TrajectoryLog& log) {
  if (log.rows.empty()) throw Error(ErrorCode::kOutOfRange, "empty log");
  MetricsSummary m;
  m.scenario = log.scenario;
  m.ticks = log.rows.size();
  m.min_stability_margin = std::numeric_limits<double>::infinity();
  m.body_height_min = std::numeric_limits<double>::infinity();
  m.body_height_max = -std::numeric_limits<double>::infinity();
  double margin_sum = 0.0, pos_sq = 0.0, ang_sq = 0.0;
  for (const auto& r : log.rows) {
    m.min_stability_margin = std::min(m.min_stability_margin, r.stability_margin);
    margin_sum += r.stability_margin;
    for (int p = 0; p < kNumPriorityColumns; ++p)
      if (!std::isnan(r.residuals[p])) m.max_residual[p] = std::max(m.max_residual[p], r.residuals[p]);
    m.max_force_utilization = std::max(m.max_force_utilization, r.force_utilization);
    m.saturated_ticks += r.saturated ? 1 : 0;
    if (r.ee_active) {
      pos_sq += r.ee_position_error * r.ee_position_error;
      ang_sq += r.ee_angle_error * r.ee_angle_error;
      ++m.ee_samples;
    }
    m.max_foot_slip = std::max(m.max_foot_slip, r.foot_slip);
    m.body_height_min = std::min(m.body_height_min, r.body_position.z());
    m.body_height_max = std::max(m.body_height_max, r.body_position.z());
  }
  m.mean_stability_margin = margin_sum / static_cast<double>(log.rows.size());
  if (m.ee_samples > 0) {
    m.ee_rms_position_error = std::sqrt(pos_sq / static_cast<double>(m.ee_samples));
    m.ee_rms_angle_error = std::sqrt(ang_sq / static_cast<double>(m.ee_samples));
  }
  const LogRow& a = log.rows.front();
  const LogRow& b = log.rows.back();
  m.displacement = (b.body_position.head<2>() - a.body_position.head<2>()).norm();
  m.yaw = b.body_ypr.x() - a.body_ypr.x();
  return m;
}

inline Json metrics_to_json(const MetricsSummary& m) {
  Json j;
  j["scenario"] = m.scenario;
  j["ticks"] = m.ticks;
  j["min_stability_margin_m"] = m.min_stability_margin;
  j["mean_stability_margin_m"] = m.mean_stability_margin;
  Json res;
  for (int p = 0; p < kNumPriorityColumns; ++p) res["p" + std::to_string(p)] = m.max_residual[p];
  j["max_residual"] = res;
  j["max_force_utilization"] = m.max_force_utilization;
  j["displacement_m"] = m.displacement;
  j["commanded_displacement_m"] = m.commanded_displacement;
  j["yaw_rad"] = m.yaw;
  j["commanded_yaw_rad"] = m.commanded_yaw;
  j["saturated_ticks"] = m.saturated_ticks;
  j["ee_samples"] = m.ee_samples;
  j["ee_rms_position_error_m"] = m.ee_rms_position_error;
  j["ee_rms_angle_error_rad"] = m.ee_rms_angle_error;
  j["max_foot_slip_m"] = m.max_foot_slip;
  j["body_height_min_m"] = m.body_height_min;
  j["body_height_max_m"] = m.body_height_max;
  return j;
}

struct SimulationResult {
  TrajectoryLog log;
  MetricsSummary metrics;
};

/// Error raised inside the tick loop, tagged with the failing tick.
class TickError : public Error {
 public:
  TickError(const Error& e, std::size_t tick)
      : Error(e.code(), "tick " + std::to_string(tick) + ": " + e.detail()), tick_(tick) {}
  std::size_t tick() const { return tick_; }

 private:
  std::size_t tick_;
};

/// Least-squares rigid transform mapping body-frame points onto world points.
inline Transform fit_rigid_transform(const std::vector<Vec3>& body_pts, const std::vector<Vec3>& world_pts) {
  const std::size_t n = body_pts.size();
  Vec3 cb = Vec3::Zero(), cw = Vec3::Zero();
  for (std::size_t i = 0; i < n; ++i) {
    cb += body_pts[i];
    cw += world_pts[i];
  }
  cb /= static_cast<double>(n);
  cw /= static_cast<double>(n);
  Mat3 h = Mat3::Zero();
  for (std::size_t i = 0; i < n; ++i) h += (body_pts[i] - cb) * (world_pts[i] - cw).transpose();
  Eigen::JacobiSVD<Mat3> svd(h, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 d = Mat3::Identity();
  d(2, 2) = (svd.matrixV() * svd.matrixU().transpose()).determinant() < 0.0 ? -1.0 : 1.0;
  Transform t;
  t.rotation = svd.matrixV() * d * svd.matrixU().transpose();
  t.translation = cw - t.rotation * cb;
  return t;
}

/// Initial whole-body state: trunk on its reference, feet on the plan's
/// first footholds, arm and manipulator at the scenario posture.
inline WholeBodyState initial_state(const RobotConfig& cfg, const Scenario& sc, const FootstepPlan& plan) {
  WholeBodyState s;
  s.body_pose = plan.body.transform(0.0);
  s.arm_angles = sc.arm_angles;
  s.manipulator_angles = sc.manipulator_angles;
  for (int leg = 0; leg < kNumLegs; ++leg) {
    const Vec3 foot = plan.foot_target(leg, 0.0);
    const Vec3 local = compose(s.body_pose, cfg.mounts[leg].mount).inverse_apply(foot);
    s.leg_angles[leg] = leg_ik(cfg.legs[leg], local);
  }
  s.stance = plan.stance_set(0.0);
  return s;
}

/**
 * Kinematic tick loop. Each tick assembles the task stack from the plan,
 * solves it, logs the state, integrates the joint velocities, refits the
 * trunk to the stance footholds and re-solves stance legs onto them.
 */
inline SimulationResult run_scenario(const RobotConfig& cfg, const Scenario& sc) {
  sc.validate();
  const std::size_t n = sc.num_ticks();
  std::size_t tick = 0;
  try {
    const FootstepPlan plan = plan_scenario(cfg, sc);
    WholeBodyState s = initial_state(cfg, sc, plan);
    std::optional<EeTrajectory> ee;
    if (sc.end_effector) ee.emplace(*sc.end_effector, end_effector_pose(cfg, s), s.body_pose, plan.body);

    SimulationResult out;
    out.log.scenario = sc.name;
    out.log.tick = sc.tick;
    out.log.rows.reserve(n + 1);
    double prev_yaw = ypr_from_rotation(s.body_pose.rotation).yaw;
    double yaw_unwrapped = prev_yaw;

    for (tick = 0; tick <= n; ++tick) {
      const double t = static_cast<double>(tick) * sc.tick;
      s.stance = plan.stance_set(t);
      std::optional<PoseTarget> ee_target;
      if (ee) ee_target = ee->target(t);
      const TaskStack stack = assemble_task_stack(plan, trunk_target_from_plan(plan, t), ee_target, t, sc.priorities);
      const SolveResult res = solve_priorities(cfg, stack, s, sc.payload, sc.solver);

      LogRow row;
      row.time = t;
      row.body_position = s.body_pose.translation;
      const YawPitchRoll ypr = ypr_from_rotation(s.body_pose.rotation);
      yaw_unwrapped += wrap_angle(ypr.yaw - prev_yaw);
      prev_yaw = ypr.yaw;
      row.body_ypr = Vec3(yaw_unwrapped, ypr.pitch, ypr.roll);
      for (int j = 0; j < kNumJoints; ++j) row.joints[j] = s.joint(j);
      row.extensions = cylinder_extensions(cfg, s);
      row.forces = res.cylinder_forces;
      std::vector<Vec3> stance_feet;
      for (int leg = 0; leg < kNumLegs; ++leg) {
        row.feet[leg] = foot_world(cfg, s, leg);
        row.stance[leg] = s.stance[leg];
        if (s.stance[leg]) {
          stance_feet.push_back(row.feet[leg]);
          row.foot_slip = std::max(row.foot_slip, (row.feet[leg] - plan.phase_at(leg, t).start).norm());
        }
      }
      const Vec3 com = com_world(cfg, s);
      row.com_xy = com.head<2>();
      row.stability_margin = stability_margin(stance_feet, row.com_xy);
      const Transform ee_pose = end_effector_pose(cfg, s);
      const YawPitchRoll eypr = ypr_from_rotation(ee_pose.rotation);
      row.ee_position = ee_pose.translation;
      row.ee_ypr = Vec3(eypr.yaw, eypr.pitch, eypr.roll);
      if (ee_target) {
        const YawPitchRoll typr = ypr_from_rotation(ee_target->pose.rotation);
        row.ee_active = true;
        row.ee_target_position = ee_target->pose.translation;
        row.ee_target_ypr = Vec3(typr.yaw, typr.pitch, typr.roll);
        row.ee_position_error = (ee_target->pose.translation - ee_pose.translation).norm();
        row.ee_angle_error = rotation_distance(ee_target->pose.rotation, ee_pose.rotation);
      }
      row.residuals.fill(std::numeric_limits<double>::quiet_NaN());
      for (std::size_t p = 0; p < res.task_residuals.size() && p < kNumPriorityColumns; ++p)
        row.residuals[p] = res.task_residuals[p];
      row.force_utilization = res.force_utilization;
      row.saturated = res.saturated;
      row.velocity_scale = res.velocity_scale;
      out.log.rows.push_back(row);
      if (tick == n) break;

      // Advance.
      const double t1 = static_cast<double>(tick + 1) * sc.tick;
      WholeBodyState next = integrate(s, res.joint_velocities, sc.tick);
      next.stance = plan.stance_set(t1);
      std::vector<Vec3> body_pts, world_pts;
      for (int leg = 0; leg < kNumLegs; ++leg) {
        if (!next.stance[leg]) continue;
        body_pts.push_back(foot_in_body_frame(cfg.mounts[leg], cfg.legs[leg], next.leg_angles[leg]));
        world_pts.push_back(plan.phase_at(leg, t1).start);
      }
      if (body_pts.size() >= 3) next.body_pose = fit_rigid_transform(body_pts, world_pts);
      for (int leg = 0; leg < kNumLegs; ++leg) {
        if (!next.stance[leg]) continue;
        const Vec3 local = compose(next.body_pose, cfg.mounts[leg].mount).inverse_apply(plan.phase_at(leg, t1).start);
        next.leg_angles[leg] = leg_ik(cfg.legs[leg], local);
      }
      s = next;
    }

    out.metrics = emit_metrics(out.log);
    const PlanarPose p0 = plan.body.pose(0.0);
    const PlanarPose p1 = plan.body.pose(static_cast<double>(n) * sc.tick);
    out.metrics.commanded_displacement = std::hypot(p1.x - p0.x, p1.y - p0.y);
    out.metrics.commanded_yaw = p1.yaw - p0.yaw;
    return out;
  } catch (const TickError&) {
    throw;
  } catch (const InvariantViolation&) {
    throw;
  } catch (const Error& e) {
    throw TickError(e, tick);
  }
}

}  // namespace hexwall

#endif  // HEXWALL_SIMULATOR_HPP_
