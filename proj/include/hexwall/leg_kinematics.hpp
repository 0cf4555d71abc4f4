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

#ifndef HEXWALL_LEG_KINEMATICS_HPP_
#define HEXWALL_LEG_KINEMATICS_HPP_

#include <array>
#include <cmath>
#include <string>

#include "hexwall/errors.hpp"
#include "hexwall/transform.hpp"

namespace hexwall {

inline constexpr int kNumLegs = 6;

struct JointLimit {
  double min = -kPi;
  double max = kPi;

  bool contains(double q, double tol = 0.0) const { return q >= min - tol && q <= max + tol; }
};

/// Coxa / femur / tibia link lengths and joint ranges of one leg.
struct LegGeometry {
  double a1 = 0.18;
  double a2 = 0.50;
  double a3 = 0.50;
  std::array<JointLimit, 3> joint_limits{{{-0.9, 0.9}, {-0.8, 1.2}, {-2.6, -0.1}}};

  void validate(const std::string& where = "leg") const {
    if (!(a1 > 0.0 && a2 > 0.0 && a3 > 0.0)) throw InvariantViolation("positive link lengths", where);
    for (const auto& lim : joint_limits)
      if (!(lim.min < lim.max)) throw InvariantViolation("joint limit ordering", where);
  }
};

struct LegJointAngles {
  double theta1 = 0.0;  // body-coxa
  double theta2 = 0.0;  // coxa-femur
  double theta3 = 0.0;  // femur-tibia

  double operator[](int i) const { return i == 0 ? theta1 : (i == 1 ? theta2 : theta3); }
  double& operator[](int i) { return i == 0 ? theta1 : (i == 1 ? theta2 : theta3); }
};

/// Leg base frame expressed in the body frame.
struct LegMount {
  int leg_id = 0;
  Transform mount;
};

// D-H table of the leg: alpha1 = pi/2, alpha2 = alpha3 = 0, all d = 0.
inline std::array<DHRow, 3> leg_dh_table(const LegGeometry& g) {
  return {{{g.a1, kPi / 2.0, 0.0, 0.0}, {g.a2, 0.0, 0.0, 0.0}, {g.a3, 0.0, 0.0, 0.0}}};
}

/// Foot position in the leg base frame (closed form).
inline Vec3 leg_fk(const LegGeometry& g, const LegJointAngles& q) {
  const double reach = g.a3 * std::cos(q.theta2 + q.theta3) + g.a2 * std::cos(q.theta2) + g.a1;
  return {std::cos(q.theta1) * reach, std::sin(q.theta1) * reach,
          g.a3 * std::sin(q.theta2 + q.theta3) + g.a2 * std::sin(q.theta2)};
}

/// Full tip frame of the leg via the product of link matrices.
inline Transform leg_transform(const LegGeometry& g, const LegJointAngles& q) {
  const auto dh = leg_dh_table(g);
  return compose(dh_link_transform(dh[0], q.theta1),
                 compose(dh_link_transform(dh[1], q.theta2), dh_link_transform(dh[2], q.theta3)));
}

/// d(foot position)/d(theta1, theta2, theta3) in the leg base frame.
inline Mat3 leg_jacobian(const LegGeometry& g, const LegJointAngles& q) {
  const double c1 = std::cos(q.theta1), s1 = std::sin(q.theta1);
  const double c2 = std::cos(q.theta2), s2 = std::sin(q.theta2);
  const double c23 = std::cos(q.theta2 + q.theta3), s23 = std::sin(q.theta2 + q.theta3);
  const double reach = g.a3 * c23 + g.a2 * c2 + g.a1;
  const double dreach2 = -g.a3 * s23 - g.a2 * s2;
  const double dreach3 = -g.a3 * s23;
  Mat3 j;
  j << -s1 * reach, c1 * dreach2, c1 * dreach3,
        c1 * reach, s1 * dreach2, s1 * dreach3,
        0.0, g.a3 * c23 + g.a2 * c2, g.a3 * c23;
  return j;
}

/**
 * Knee-down inverse kinematics of one leg.
 *
 * theta1 = atan2(y, x); the femur/tibia pair is solved in the plane of the
 * leg from the hip-to-foot distance. Throws Unreachable outside the annulus
 * |a2 - a3| <= d <= a2 + a3 or on the coxa axis (x = y = 0), and
 * JointLimitViolation when `check_limits` is set and the solution leaves the
 * configured ranges.
 */
inline LegJointAngles leg_ik(const LegGeometry& g, const Vec3& p, bool check_limits = true) {
  constexpr double kClampTol = 1e-12;
  constexpr double kRoundTripTol = 1e-6;

  const double r = std::hypot(p.x(), p.y());
  if (r < 1e-12) throw Error(ErrorCode::kUnreachable, "target on the coxa axis, theta1 indeterminate");

  const double tau = p.squaredNorm() - 2.0 * g.a1 * r;
  const double d2 = tau + g.a1 * g.a1;
  const double d = std::sqrt(std::max(d2, 0.0));
  if (d < 1e-12) throw Error(ErrorCode::kUnreachable, "target at the femur pivot");

  double c3 = (d2 - g.a2 * g.a2 - g.a3 * g.a3) / (2.0 * g.a2 * g.a3);
  double c2 = (d2 + g.a2 * g.a2 - g.a3 * g.a3) / (2.0 * g.a2 * d);
  if (std::abs(c3) > 1.0 + kClampTol || std::abs(c2) > 1.0 + kClampTol)
    throw Error(ErrorCode::kUnreachable, "target outside the leg annulus");
  c3 = std::clamp(c3, -1.0, 1.0);
  c2 = std::clamp(c2, -1.0, 1.0);

  LegJointAngles q;
  q.theta1 = std::atan2(p.y(), p.x());
  q.theta2 = wrap_angle(std::atan2(p.z(), r - g.a1) + std::acos(c2));
  q.theta3 = -std::acos(c3);

  if ((leg_fk(g, q) - p).norm() > kRoundTripTol)
    throw Error(ErrorCode::kUnreachable, "no consistent knee-down solution");

  if (check_limits) {
    for (int i = 0; i < 3; ++i) {
      if (!g.joint_limits[i].contains(q[i]))
        throw Error(ErrorCode::kJointLimitViolation, "joint " + std::to_string(i + 1) + " = " + std::to_string(q[i]));
    }
  }
  return q;
}

inline Vec3 foot_in_body_frame(const LegMount& m, const LegGeometry& g, const LegJointAngles& q) {
  return m.mount.apply(leg_fk(g, q));
}

/// Regular-hexagon layout: leg k at yaw k*60deg + yaw_offset, pointing
/// radially outward at the given circumradius and height.
inline std::array<LegMount, kNumLegs> hexagon_mounts(double circumradius, double yaw_offset, double z = 0.0) {
  std::array<LegMount, kNumLegs> out;
  for (int k = 0; k < kNumLegs; ++k) {
    const double yaw = k * kPi / 3.0 + yaw_offset;
    out[k].leg_id = k;
    out[k].mount.rotation = rot_z(yaw);
    out[k].mount.translation = Vec3(circumradius * std::cos(yaw), circumradius * std::sin(yaw), z);
  }
  return out;
}

}  // namespace hexwall

#endif  // HEXWALL_LEG_KINEMATICS_HPP_
