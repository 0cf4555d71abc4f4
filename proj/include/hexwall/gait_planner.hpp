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

#ifndef HEXWALL_GAIT_PLANNER_HPP_
#define HEXWALL_GAIT_PLANNER_HPP_

#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "hexwall/errors.hpp"
#include "hexwall/leg_kinematics.hpp"
#include "hexwall/robot_config.hpp"
#include "hexwall/transform.hpp"

namespace hexwall {

struct GaitParams {
  double cycle_period = 2.0;     // s
  double duty_factor = 0.5;      // stance fraction
  double step_height = 0.08;     // m
  double step_length_max = 0.35; // m
  double stance_width = 0.95;    // nominal foot radius from the body centre (m)
  double max_speed = 0.3;        // m/s
  double max_yaw_rate = 0.5;     // rad/s

  void validate() const {
    if (!(cycle_period > 0.0)) throw InvariantViolation("positive cycle period", "gait");
    if (!(duty_factor >= 0.5 && duty_factor < 1.0)) throw InvariantViolation("duty factor in [0.5, 1)", "gait");
    if (!(step_height > 0.0)) throw InvariantViolation("positive step height", "gait");
    if (!(step_length_max > 0.0 && stance_width > 0.0)) throw InvariantViolation("positive step length and width", "gait");
  }
};

struct BodyCommand {
  Vec2 linear_velocity = Vec2::Zero();  // body frame, m/s
  double yaw_rate = 0.0;                // rad/s
  double body_height = 0.35;            // m

  bool is_zero() const { return linear_velocity.norm() == 0.0 && yaw_rate == 0.0; }
};

struct PlanarPose {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;
};

/// Body pose as a 3D transform at the given height (flat ground, level trunk).
inline Transform body_transform(const PlanarPose& p, double height) {
  Transform t;
  t.rotation = rot_z(p.yaw);
  t.translation = Vec3(p.x, p.y, height);
  return t;
}

/**
 * Reference trunk motion: piecewise-constant body-frame twist integrated in
 * closed form from a start pose. Stationary outside the segments.
 */
class BodyReference {
 public:
  struct Segment {
    double t0 = 0.0;
    double t1 = 0.0;
    Vec2 velocity = Vec2::Zero();  // body frame
    double yaw_rate = 0.0;
  };

  BodyReference() = default;
  BodyReference(PlanarPose start, double height, std::vector<Segment> segments)
      : start_(start), height_(height), segments_(std::move(segments)) {
    knots_.reserve(segments_.size() + 1);
    PlanarPose p = start_;
    for (const auto& s : segments_) {
      knots_.push_back(p);
      p = advance(p, s, s.t1 - s.t0);
    }
    knots_.push_back(p);
  }

  const PlanarPose& start() const { return start_; }
  double height() const { return height_; }
  const std::vector<Segment>& segments() const { return segments_; }
  double end_time() const { return segments_.empty() ? 0.0 : segments_.back().t1; }

  PlanarPose pose(double t) const {
    if (segments_.empty() || t <= segments_.front().t0) return start_;
    for (std::size_t i = 0; i < segments_.size(); ++i) {
      const auto& s = segments_[i];
      if (t < s.t0) return knots_[i];
      if (t < s.t1) return advance(knots_[i], s, t - s.t0);
    }
    return knots_.back();
  }

  Transform transform(double t) const { return body_transform(pose(t), height_); }

  /// World-frame linear velocity (x, y) and yaw rate at time t.
  std::pair<Vec2, double> velocity(double t) const {
    for (const auto& s : segments_) {
      if (t >= s.t0 && t < s.t1) {
        const double yaw = pose(t).yaw;
        const Vec2 v(std::cos(yaw) * s.velocity.x() - std::sin(yaw) * s.velocity.y(),
                     std::sin(yaw) * s.velocity.x() + std::cos(yaw) * s.velocity.y());
        return {v, s.yaw_rate};
      }
    }
    return {Vec2::Zero(), 0.0};
  }

 private:
  static PlanarPose advance(const PlanarPose& p, const Segment& s, double dt) {
    PlanarPose out;
    const double w = s.yaw_rate;
    const double vx = s.velocity.x(), vy = s.velocity.y();
    out.yaw = p.yaw + w * dt;
    double ic, is;  // integrals of cos(yaw) and sin(yaw) over the interval
    if (std::abs(w) < 1e-12) {
      ic = std::cos(p.yaw) * dt;
      is = std::sin(p.yaw) * dt;
    } else {
      ic = (std::sin(out.yaw) - std::sin(p.yaw)) / w;
      is = (std::cos(p.yaw) - std::cos(out.yaw)) / w;
    }
    out.x = p.x + vx * ic - vy * is;
    out.y = p.y + vx * is + vy * ic;
    return out;
  }

  PlanarPose start_;
  double height_ = 0.35;
  std::vector<Segment> segments_;
  std::vector<PlanarPose> knots_;
};

/**
 * Smooth swing path: horizontal quintic smoothstep between the footholds and
 * a vertical 64 s^3 (1 - s)^3 bump; both have zero velocity at lift-off and
 * touch-down.
 */
class SwingTrajectory {
 public:
  SwingTrajectory() = default;
  SwingTrajectory(Vec3 start, Vec3 target, double step_height, double duration)
      : start_(std::move(start)), target_(std::move(target)), duration_(duration) {
    bump_ = step_height + 0.5 * std::abs(target_.z() - start_.z());
  }

  double duration() const { return duration_; }
  const Vec3& start() const { return start_; }
  const Vec3& target() const { return target_; }

  Vec3 position(double t) const {
    const double s = std::clamp(t / duration_, 0.0, 1.0);
    Vec3 p = start_ + blend(s) * (target_ - start_);
    p.z() += bump_ * bump(s);
    return p;
  }

  Vec3 velocity(double t) const {
    if (t <= 0.0 || t >= duration_) return Vec3::Zero();
    const double s = t / duration_;
    Vec3 v = blend_rate(s) / duration_ * (target_ - start_);
    v.z() += bump_ * bump_rate(s) / duration_;
    return v;
  }

 private:
  static double blend(double s) { return s * s * s * (10.0 - 15.0 * s + 6.0 * s * s); }
  static double blend_rate(double s) { return 30.0 * s * s * (1.0 - s) * (1.0 - s); }
  static double bump(double s) { return 64.0 * std::pow(s * (1.0 - s), 3); }
  static double bump_rate(double s) { return 192.0 * std::pow(s * (1.0 - s), 2) * (1.0 - 2.0 * s); }

  Vec3 start_ = Vec3::Zero();
  Vec3 target_ = Vec3::Zero();
  double duration_ = 1.0;
  double bump_ = 0.0;
};

inline SwingTrajectory plan_swing_trajectory(const Vec3& start, const Vec3& target, double step_height,
                                             double duration) {
  return SwingTrajectory(start, target, step_height, duration);
}

/// One stance or swing interval of a leg. Stance phases hold `start` fixed.
struct LegPhase {
  bool swing = false;
  double t0 = 0.0;
  double t1 = 0.0;
  Vec3 start = Vec3::Zero();   // world
  Vec3 target = Vec3::Zero();  // world; equals start for stance
};

inline constexpr std::array<int, 3> kTripodA{0, 2, 4};
inline constexpr std::array<int, 3> kTripodB{1, 3, 5};

inline bool in_tripod_a(int leg) { return leg % 2 == 0; }

struct FootstepPlan {
  GaitParams gait;
  BodyReference body;
  double horizon = 0.0;
  std::array<Vec3, kNumLegs> nominal_feet;  // body frame
  std::array<std::vector<LegPhase>, kNumLegs> phases;

  const LegPhase& phase_at(int leg, double t) const {
    const auto& ph = phases[leg];
    for (const auto& p : ph)
      if (t < p.t1) return p;
    return ph.back();
  }

  bool in_stance(int leg, double t) const { return !phase_at(leg, t).swing; }

  std::array<bool, kNumLegs> stance_set(double t) const {
    std::array<bool, kNumLegs> s{};
    for (int i = 0; i < kNumLegs; ++i) s[i] = in_stance(i, t);
    return s;
  }

  int swing_count() const {
    int n = 0;
    for (const auto& ph : phases)
      for (const auto& p : ph) n += p.swing ? 1 : 0;
    return n;
  }

  /// Stance foothold, or the current swing sample, of `leg` at t (world).
  Vec3 foot_target(int leg, double t) const {
    const LegPhase& p = phase_at(leg, t);
    if (!p.swing) return p.start;
    return plan_swing_trajectory(p.start, p.target, gait.step_height, p.t1 - p.t0).position(t - p.t0);
  }

  Vec3 foot_velocity(int leg, double t) const {
    const LegPhase& p = phase_at(leg, t);
    if (!p.swing) return Vec3::Zero();
    return plan_swing_trajectory(p.start, p.target, gait.step_height, p.t1 - p.t0).velocity(t - p.t0);
  }
};

/// Nominal stance foot of each leg in the body frame: along the mount's
/// radial direction at `stance_width` from the centre, on the ground.
inline std::array<Vec3, kNumLegs> nominal_feet(const RobotConfig& cfg, double stance_width, double body_height) {
  std::array<Vec3, kNumLegs> out;
  for (int i = 0; i < kNumLegs; ++i) {
    const Vec3 dir = cfg.mounts[i].mount.rotation.col(0);
    Vec3 horiz(dir.x(), dir.y(), 0.0);
    horiz.normalize();
    out[i] = stance_width * horiz + Vec3(0.0, 0.0, -body_height);
  }
  return out;
}

namespace detail {

inline void require_reachable(const RobotConfig& cfg, int leg, const Transform& body, const Vec3& foot_world,
                              double t) {
  const Vec3 in_leg = invert(compose(body, cfg.mounts[leg].mount)).apply(foot_world);
  try {
    (void)leg_ik(cfg.legs[leg], in_leg);
  } catch (const Error& e) {
    throw Error(ErrorCode::kCommandInfeasible,
                "leg " + std::to_string(leg) + " foothold unreachable at t=" + std::to_string(t) + ": " + e.what());
  }
}

// Shared scheduler: alternating tripods over the body reference. A swing
// that would land where the foot already stands is dropped.
inline FootstepPlan schedule_tripod(const RobotConfig& cfg, const GaitParams& gait, BodyReference body,
                                    double horizon) {
  gait.validate();
  FootstepPlan plan;
  plan.gait = gait;
  plan.horizon = horizon;
  plan.nominal_feet = nominal_feet(cfg, gait.stance_width, body.height());
  plan.body = std::move(body);

  const double period = gait.cycle_period;
  const double swing_len = (1.0 - gait.duty_factor) * period;
  const bool moving = plan.body.end_time() > 0.0;

  for (int leg = 0; leg < kNumLegs; ++leg) {
    auto& ph = plan.phases[leg];
    const Transform t_start = plan.body.transform(0.0);
    Vec3 foothold = t_start.apply(plan.nominal_feet[leg]);
    foothold.z() = 0.0;
    double cursor = 0.0;
    if (moving) {
      const double offset = in_tripod_a(leg) ? 0.0 : 0.5 * period;
      for (double ts = offset; ts < horizon - 1e-12; ts += period) {
        const double te = ts + swing_len;
        if (te > horizon + 1e-12) break;
        // next stance runs until this leg's following lift-off (or horizon)
        const double stance_end = std::min(ts + period, horizon);
        const double mid = 0.5 * (te + stance_end);
        Vec3 target = plan.body.transform(std::min(mid, horizon)).apply(plan.nominal_feet[leg]);
        target.z() = 0.0;
        if ((target - foothold).norm() < 1e-9) continue;
        const double step = Vec2(target.x() - foothold.x(), target.y() - foothold.y()).norm();
        if (step > gait.step_length_max)
          throw Error(ErrorCode::kCommandInfeasible, "leg " + std::to_string(leg) + " step " + std::to_string(step) +
                                                         " m exceeds step_length_max");
        if (ts > cursor) ph.push_back({false, cursor, ts, foothold, foothold});
        ph.push_back({true, ts, te, foothold, target});
        foothold = target;
        cursor = te;
      }
    }
    ph.push_back({false, cursor, std::max(horizon, cursor), foothold, foothold});
  }

  // Reachability of every stance foothold at the start, middle and end of
  // its interval.
  for (int leg = 0; leg < kNumLegs; ++leg) {
    for (const auto& p : plan.phases[leg]) {
      if (p.swing) continue;
      for (double t : {p.t0, 0.5 * (p.t0 + p.t1), p.t1})
        require_reachable(cfg, leg, plan.body.transform(t), p.start, t);
    }
  }
  return plan;
}

inline void check_command(const GaitParams& gait, const BodyCommand& cmd) {
  if (cmd.linear_velocity.norm() > gait.max_speed + 1e-12)
    throw Error(ErrorCode::kCommandInfeasible, "linear velocity exceeds max_speed");
  if (std::abs(cmd.yaw_rate) > gait.max_yaw_rate + 1e-12)
    throw Error(ErrorCode::kCommandInfeasible, "yaw rate exceeds max_yaw_rate");
}

}  // namespace detail

/// A command held over [t0, t1).
struct CommandSegment {
  double t0 = 0.0;
  double t1 = 0.0;
  BodyCommand command;
};

/**
 * Tripod gait for a piecewise-constant body command. Footholds are the
 * nominal stance positions carried along the integrated body reference to
 * the middle of each leg's next stance interval.
 */
inline FootstepPlan plan_tripod_gait(const RobotConfig& cfg, const GaitParams& gait,
                                     const std::vector<CommandSegment>& profile, double horizon,
                                     const PlanarPose& start = {}) {
  std::vector<BodyReference::Segment> segs;
  double height = profile.empty() ? BodyCommand{}.body_height : profile.front().command.body_height;
  for (const auto& seg : profile) {
    detail::check_command(gait, seg.command);
    if (seg.command.is_zero() || seg.t1 <= seg.t0) continue;
    segs.push_back({seg.t0, std::min(seg.t1, horizon), seg.command.linear_velocity, seg.command.yaw_rate});
  }
  return detail::schedule_tripod(cfg, gait, BodyReference(start, height, std::move(segs)), horizon);
}

inline FootstepPlan plan_tripod_gait(const RobotConfig& cfg, const GaitParams& gait, const BodyCommand& cmd,
                                     double horizon, const PlanarPose& start = {}) {
  return plan_tripod_gait(cfg, gait, std::vector<CommandSegment>{{0.0, horizon, cmd}}, horizon, start);
}

/**
 * Turn in place by `total_yaw`. The turn is split into whole gait cycles so
 * that each foothold moves at most 90% of step_length_max per step and the
 * yaw rate stays within its cap; one extra cycle brings every foot back to
 * its nominal position.
 */
inline FootstepPlan plan_turn_in_place(const RobotConfig& cfg, const GaitParams& gait, double total_yaw,
                                       double body_height = 0.35, const PlanarPose& start = {}) {
  gait.validate();
  if (total_yaw == 0.0)
    return detail::schedule_tripod(cfg, gait, BodyReference(start, body_height, {}), gait.cycle_period);

  const double chord = 0.9 * gait.step_length_max;
  const double yaw_per_cycle = 2.0 * std::asin(std::min(1.0, chord / (2.0 * gait.stance_width)));
  int cycles = static_cast<int>(std::ceil(std::abs(total_yaw) / yaw_per_cycle - 1e-12));
  cycles = std::max(cycles, static_cast<int>(std::ceil(std::abs(total_yaw) /
                                                       (gait.max_yaw_rate * gait.cycle_period) - 1e-12)));
  cycles = std::max(cycles, 1);
  // The first step of the late tripod spans more than one cycle of yaw, so
  // cycles are added until every planned step fits.
  for (int extra = 0;; ++extra) {
    const double turn_time = cycles * gait.cycle_period;
    BodyReference body(start, body_height, {{0.0, turn_time, Vec2::Zero(), total_yaw / turn_time}});
    try {
      return detail::schedule_tripod(cfg, gait, std::move(body), turn_time + gait.cycle_period);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kCommandInfeasible || extra >= 64) throw;
      ++cycles;
    }
  }
}

}  // namespace hexwall

#endif  // HEXWALL_GAIT_PLANNER_HPP_
