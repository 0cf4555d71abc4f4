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

#ifndef HEXWALL_FOLDING_ARM_HPP_
#define HEXWALL_FOLDING_ARM_HPP_

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "hexwall/errors.hpp"
#include "hexwall/leg_kinematics.hpp"
#include "hexwall/transform.hpp"

namespace hexwall {

/**
 * Planar cylinder-driven revolute joint.
 *
 * The joint pivot A carries two anchor arms: AB (fixed side, length
 * `l_anchor_a`) and AC (moving side, `l_anchor_b`). The hydraulic cylinder
 * spans BC. At joint angle theta the included angle BAC is
 * `rest_angle + theta`, so positive theta always lengthens the cylinder;
 * `direction` only records which way that motion turns in the world.
 */
struct FoldLinkGeometry {
  double l_anchor_a = 0.3;
  double l_anchor_b = 0.12;
  double l_cyl_rest = 0.0;
  double rest_angle = kPi / 3.0;
  JointLimit joint_limits{0.0, kPi / 2.0};
  int direction = 1;

  static constexpr double kClosureTol = 1e-9;

  // Cylinder length at rest derived from the anchors (exact closure).
  double derived_rest_length() const {
    return std::sqrt(l_anchor_a * l_anchor_a + l_anchor_b * l_anchor_b -
                     2.0 * l_anchor_a * l_anchor_b * std::cos(rest_angle));
  }

  static FoldLinkGeometry make(double la, double lb, double rest, JointLimit lim, int dir = 1) {
    FoldLinkGeometry g;
    g.l_anchor_a = la;
    g.l_anchor_b = lb;
    g.rest_angle = rest;
    g.joint_limits = lim;
    g.direction = dir;
    g.l_cyl_rest = g.derived_rest_length();
    return g;
  }

  void validate(const std::string& where = "fold linkage") const {
    if (!(l_anchor_a > 0.0 && l_anchor_b > 0.0)) throw InvariantViolation("positive anchor lengths", where);
    if (std::abs(l_cyl_rest - derived_rest_length()) > kClosureTol)
      throw InvariantViolation("law-of-cosines closure", where);
    if (!(std::abs(l_anchor_a - l_anchor_b) < l_cyl_rest && l_cyl_rest < l_anchor_a + l_anchor_b))
      throw InvariantViolation("triangle inequality", where);
    if (!(joint_limits.min < joint_limits.max)) throw InvariantViolation("joint limit ordering", where);
    if (joint_limits.min + rest_angle < 0.0 || joint_limits.max + rest_angle > kPi)
      throw InvariantViolation("included angle within [0, pi]", where);
    if (direction != 1 && direction != -1) throw InvariantViolation("direction is +1 or -1", where);
  }
};

namespace detail {

inline void check_fold_angle(const FoldLinkGeometry& g, double theta) {
  constexpr double kTol = 1e-12;
  if (!g.joint_limits.contains(theta, kTol))
    throw Error(ErrorCode::kOutOfRange, "fold joint angle " + std::to_string(theta) + " outside limits");
  const double included = g.rest_angle + theta;
  if (included < -kTol || included > kPi + kTol)
    throw Error(ErrorCode::kOutOfRange, "fold included angle leaves [0, pi]");
}

}  // namespace detail

// Current cylinder length |BC| at joint angle theta (no range checks).
inline double fold_cylinder_length(const FoldLinkGeometry& g, double theta) {
  const double la = g.l_anchor_a, lb = g.l_anchor_b;
  return std::sqrt(la * la + lb * lb - 2.0 * la * lb * std::cos(theta + g.rest_angle));
}

namespace detail {

// Extension map without the range check.
inline double fold_extension_unchecked(const FoldLinkGeometry& g, double theta) {
  const double la = g.l_anchor_a, lb = g.l_anchor_b;
  const double l0 = g.derived_rest_length();
  const double l = fold_cylinder_length(g, theta);
  // cos(rest) - cos(rest + theta) = 2 sin(rest + theta/2) sin(theta/2)
  const double diff_sq = 4.0 * la * lb * std::sin(g.rest_angle + 0.5 * theta) * std::sin(0.5 * theta);
  return diff_sq / (l + l0);
}

}  // namespace detail

/// Cylinder extension for joint angle theta (cosine rule).
///
/// Evaluated as (L^2 - L0^2) / (L + L0): exactly zero at theta = 0 and free
/// of cancellation for small angles.
inline double fold_extension(const FoldLinkGeometry& g, double theta) {
  detail::check_fold_angle(g, theta);
  return detail::fold_extension_unchecked(g, theta);
}

inline double fold_angle_from_extension(const FoldLinkGeometry& g, double dl) {
  const double la = g.l_anchor_a, lb = g.l_anchor_b;
  const double l = g.derived_rest_length() + dl;
  if (l < std::abs(la - lb) || l > la + lb)
    throw Error(ErrorCode::kOutOfRange, "cylinder length " + std::to_string(l) + " violates the triangle inequality");
  const double c = std::clamp((la * la + lb * lb - l * l) / (2.0 * la * lb), -1.0, 1.0);
  return std::acos(c) - g.rest_angle;
}

/// Angle ABC between the fixed anchor arm and the cylinder axis.
inline double fold_cylinder_anchor_angle(const FoldLinkGeometry& g, double theta) {
  detail::check_fold_angle(g, theta);
  const double la = g.l_anchor_a, lb = g.l_anchor_b;
  const double l = fold_cylinder_length(g, theta);
  if (l <= 0.0) return kPi / 2.0;
  const double c = std::clamp((la * la + l * l - lb * lb) / (2.0 * la * l), -1.0, 1.0);
  return std::acos(c);
}

/// Effective lever arm sin(pi - ABC) * l_AB; equals d(extension)/d(theta).
inline double fold_lever_arm(const FoldLinkGeometry& g, double theta) {
  return std::sin(kPi - fold_cylinder_anchor_angle(g, theta)) * g.l_anchor_a;
}

/// Joint torque produced by axial cylinder force `force` (positive pushes).
inline double fold_torque(const FoldLinkGeometry& g, double theta, double force) {
  return fold_lever_arm(g, theta) * force;
}

/**
 * Three-joint folding arm: a planar chain A -> D -> G -> J.
 *
 * The chain lives in the x-y plane of the arm base frame and rotates about
 * its z axis. Segment k leaves its joint at world angle
 * `rest_offsets[k] + direction_k * q_k` relative to the previous segment.
 * `mount` places the arm base frame in the body frame.
 */
struct FoldingArm {
  std::array<FoldLinkGeometry, 3> joints;
  std::array<double, 3> segment_lengths{0.45, 0.40, 0.15};
  std::array<double, 3> rest_offsets{0.0, 0.0, 0.0};
  Transform mount;

  void validate() const {
    for (int k = 0; k < 3; ++k) {
      joints[k].validate("arm joint " + std::to_string(k + 1));
      if (!(segment_lengths[k] > 0.0))
        throw InvariantViolation("positive segment length", "arm segment " + std::to_string(k + 1));
    }
  }
};

// Transform of each joint frame and the tip (index 3), in the arm base frame.
inline std::array<Transform, 4> fold_arm_frames(const FoldingArm& arm, const std::array<double, 3>& q) {
  std::array<Transform, 4> frames;
  Transform t;
  for (int k = 0; k < 3; ++k) {
    detail::check_fold_angle(arm.joints[k], q[k]);
    t = compose(t, Transform::from_rotation(rot_z(arm.rest_offsets[k] + arm.joints[k].direction * q[k])));
    frames[k] = t;
    t = compose(t, Transform::from_translation(Vec3(arm.segment_lengths[k], 0.0, 0.0)));
  }
  frames[3] = t;
  return frames;
}

/// Tip frame J relative to the arm base A.
inline Transform fold_arm_fk(const FoldingArm& arm, const std::array<double, 3>& q) {
  return fold_arm_frames(arm, q)[3];
}

/// Folded (q = 0) bounding-box check against the nominal envelope
/// (length 0.95 m, height 1.01 m). Returns warnings; never throws.
inline std::vector<std::string> arm_envelope_warnings(const FoldingArm& arm, double max_length = 0.95,
                                                      double max_height = 1.01) {
  std::vector<std::string> out;
  const auto frames = fold_arm_frames(arm, {0.0, 0.0, 0.0});
  double xmin = 0.0, xmax = 0.0, ymin = 0.0, ymax = 0.0;
  for (const auto& f : frames) {
    xmin = std::min(xmin, f.translation.x());
    xmax = std::max(xmax, f.translation.x());
    ymin = std::min(ymin, f.translation.y());
    ymax = std::max(ymax, f.translation.y());
  }
  if (xmax - xmin > max_length)
    out.push_back("folded arm length " + std::to_string(xmax - xmin) + " m exceeds " + std::to_string(max_length));
  if (ymax - ymin > max_height)
    out.push_back("folded arm height " + std::to_string(ymax - ymin) + " m exceeds " + std::to_string(max_height));
  return out;
}

}  // namespace hexwall

#endif  // HEXWALL_FOLDING_ARM_HPP_
