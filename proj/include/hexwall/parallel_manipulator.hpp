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

#ifndef HEXWALL_PARALLEL_MANIPULATOR_HPP_
#define HEXWALL_PARALLEL_MANIPULATOR_HPP_

#include <array>
#include <cmath>
#include <string>

#include "hexwall/errors.hpp"
#include "hexwall/leg_kinematics.hpp"
#include "hexwall/transform.hpp"

namespace hexwall {

/**
 * One serial-parallel module of the manipulator.
 *
 * O is the pitch pivot. The primary cylinder runs from the fixed anchor L to
 * the moving anchor K; with |OK| = |OL| the triangle K-O-L is isosceles.
 * Pitching by theta4 turns K towards L (angle KOL shrinks). The two auxiliary
 * cylinders P and Q act as one virtual cylinder M-R on an isosceles triangle
 * M-O-R whose apex angle MOR grows with theta4, so the auxiliary cylinders
 * always move opposite to the primary one.
 */
struct ModuleGeometry {
  double l_LO = 0.12;
  double l_RO = 0.10;
  double l_KL_rest = 0.0;
  double l_MR_rest = 0.0;
  double ang_KLO = deg2rad(40.0);
  double ang_KOL = deg2rad(100.0);
  double ang_MOR = deg2rad(80.0);
  double ang_MRO = deg2rad(50.0);
  JointLimit joint_limits{deg2rad(-50.0), deg2rad(50.0)};

  static constexpr double kClosureTol = 1e-9;

  double derived_primary_rest() const { return std::sin(ang_KOL) * l_LO / std::sin(ang_KLO); }
  double derived_aux_rest() const { return std::sin(ang_MOR) * l_RO / std::sin(ang_MRO); }

  // Builds a consistent module from the pivot distances and apex angles.
  static ModuleGeometry make(double l_lo, double l_ro, double kol, double mor, JointLimit lim) {
    ModuleGeometry g;
    g.l_LO = l_lo;
    g.l_RO = l_ro;
    g.ang_KOL = kol;
    g.ang_MOR = mor;
    g.ang_KLO = 0.5 * (kPi - kol);
    g.ang_MRO = 0.5 * (kPi - mor);
    g.joint_limits = lim;
    g.l_KL_rest = g.derived_primary_rest();
    g.l_MR_rest = g.derived_aux_rest();
    return g;
  }

  void validate(const std::string& where = "module") const {
    if (!(l_LO > 0.0 && l_RO > 0.0)) throw InvariantViolation("positive pivot distances", where);
    if (!(ang_KOL > 0.0 && ang_KOL < kPi && ang_MOR > 0.0 && ang_MOR < kPi))
      throw InvariantViolation("apex angles within (0, pi)", where);
    if (std::abs(ang_KLO - 0.5 * (kPi - ang_KOL)) > kClosureTol)
      throw InvariantViolation("isosceles primary triangle", where);
    if (std::abs(ang_MRO - 0.5 * (kPi - ang_MOR)) > kClosureTol)
      throw InvariantViolation("isosceles auxiliary triangle", where);
    if (std::abs(l_KL_rest - derived_primary_rest()) > kClosureTol)
      throw InvariantViolation("law-of-sines closure (primary)", where);
    if (std::abs(l_MR_rest - derived_aux_rest()) > kClosureTol)
      throw InvariantViolation("law-of-sines closure (auxiliary)", where);
    if (!(joint_limits.min < joint_limits.max)) throw InvariantViolation("joint limit ordering", where);
    if (ang_KOL - joint_limits.max < 0.0 || ang_KOL - joint_limits.min > kPi ||
        ang_MOR + joint_limits.min < 0.0 || ang_MOR + joint_limits.max > kPi)
      throw InvariantViolation("module range keeps triangles non-inverted", where);
  }
};

namespace detail {

inline constexpr double kSingularSine = 1e-9;

inline void check_module_angle(const ModuleGeometry& g, double theta4) {
  if (!g.joint_limits.contains(theta4, 1e-12))
    throw Error(ErrorCode::kOutOfRange, "module angle " + std::to_string(theta4) + " outside limits");
}

}  // namespace detail

/// Primary cylinder length |K'L| at theta4 (law of sines on the pitched triangle).
inline double module_primary_length(const ModuleGeometry& g, double theta4) {
  const double den = std::sin(0.5 * theta4 + g.ang_KLO);
  if (std::abs(den) < detail::kSingularSine) throw Error(ErrorCode::kSingular, "primary triangle degenerate");
  return std::sin(g.ang_KOL - theta4) * g.l_LO / den;
}

inline double module_aux_length(const ModuleGeometry& g, double theta4) {
  const double den = std::sin(g.ang_MRO - 0.5 * theta4);
  if (std::abs(den) < detail::kSingularSine) throw Error(ErrorCode::kSingular, "auxiliary triangle degenerate");
  return std::sin(g.ang_MOR + theta4) * g.l_RO / den;
}

/// Extension of the primary cylinder KL: rest length minus |K'L|.
inline double module_primary_extension(const ModuleGeometry& g, double theta4) {
  detail::check_module_angle(g, theta4);
  return module_primary_length(g, 0.0) - module_primary_length(g, theta4);
}

/// Extension of each auxiliary cylinder (P and Q share the virtual MR).
inline double module_aux_extension(const ModuleGeometry& g, double theta4) {
  detail::check_module_angle(g, theta4);
  return module_aux_length(g, 0.0) - module_aux_length(g, theta4);
}

// Base angles of the pitched triangles, from the cylinder lengths by the
// law of cosines (|OK'| = |OL|, |OM'| = |OR|).
inline double module_primary_base_angle(const ModuleGeometry& g, double theta4) {
  const double l = module_primary_length(g, theta4);
  return std::acos(std::clamp(l / (2.0 * g.l_LO), -1.0, 1.0));
}

inline double module_aux_base_angle(const ModuleGeometry& g, double theta4) {
  const double l = module_aux_length(g, theta4);
  return std::acos(std::clamp(l / (2.0 * g.l_RO), -1.0, 1.0));
}

/// Lever arms as they enter the module torque balance: sin(K'LO) l_LO and
/// sin(M'RO) l_LO.
struct ModuleLevers {
  double primary = 0.0;
  double aux = 0.0;
};

inline ModuleLevers module_levers(const ModuleGeometry& g, double theta4) {
  detail::check_module_angle(g, theta4);
  return {std::sin(module_primary_base_angle(g, theta4)) * g.l_LO,
          std::sin(module_aux_base_angle(g, theta4)) * g.l_LO};
}

/// Module torque from the primary force f4 and auxiliary forces f5, f6.
inline double module_torque(const ModuleGeometry& g, double theta4, double f4, double f5, double f6) {
  const ModuleLevers lv = module_levers(g, theta4);
  return lv.primary * f4 - lv.aux * (f5 + f6);
}

/// Auxiliary lever from virtual work, sin(M'RO) l_RO = -d(aux extension)/d(theta4).
/// Differs from `module_levers().aux` whenever l_RO != l_LO.
inline double module_aux_lever_virtual_work(const ModuleGeometry& g, double theta4) {
  detail::check_module_angle(g, theta4);
  return std::sin(module_aux_base_angle(g, theta4)) * g.l_RO;
}

/// Inverse of the primary map by bisection over the joint range.
inline double module_angle_from_extension(const ModuleGeometry& g, double dl_primary) {
  double lo = g.joint_limits.min, hi = g.joint_limits.max;
  const double f_lo = module_primary_extension(g, lo);
  const double f_hi = module_primary_extension(g, hi);
  if (dl_primary < f_lo || dl_primary > f_hi)
    throw Error(ErrorCode::kOutOfRange, "primary extension " + std::to_string(dl_primary) + " outside attainable image");
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (module_primary_extension(g, mid) < dl_primary)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

/// Minimum-norm (F4, F5, F6) producing module torque `torque`; F5 = F6 and
/// the auxiliary pair always pushes against the primary cylinder.
inline std::array<double, 3> module_force_split(const ModuleGeometry& g, double theta4, double torque) {
  const ModuleLevers lv = module_levers(g, theta4);
  const double norm_sq = lv.primary * lv.primary + 2.0 * lv.aux * lv.aux;
  if (norm_sq < 1e-12) throw Error(ErrorCode::kLeverSingular, "module levers vanish");
  const double s = torque / norm_sq;
  return {s * lv.primary, -s * lv.aux, -s * lv.aux};
}

struct Manipulator {
  std::array<ModuleGeometry, 3> modules;
  std::array<double, 3> segment_lengths{0.40, 0.40, 0.30};
  double total_pitch_limit = deg2rad(150.0);

  void validate() const {
    for (int k = 0; k < 3; ++k) {
      modules[k].validate("manipulator module " + std::to_string(k + 1));
      if (!(segment_lengths[k] > 0.0))
        throw InvariantViolation("positive segment length", "manipulator segment " + std::to_string(k + 1));
    }
  }
};

inline std::array<Transform, 4> manipulator_frames(const Manipulator& m, const std::array<double, 3>& q) {
  double total = 0.0;
  for (int k = 0; k < 3; ++k) {
    detail::check_module_angle(m.modules[k], q[k]);
    total += q[k];
  }
  if (std::abs(total) > m.total_pitch_limit + 1e-12)
    throw Error(ErrorCode::kOutOfRange, "total manipulator pitch exceeds its range");
  std::array<Transform, 4> frames;
  Transform t;
  for (int k = 0; k < 3; ++k) {
    t = compose(t, Transform::from_rotation(rot_z(q[k])));
    frames[k] = t;
    t = compose(t, Transform::from_translation(Vec3(m.segment_lengths[k], 0.0, 0.0)));
  }
  frames[3] = t;
  return frames;
}

/// Tip frame of the three-module chain relative to the manipulator base.
inline Transform manipulator_fk(const Manipulator& m, const std::array<double, 3>& q) {
  return manipulator_frames(m, q)[3];
}

}  // namespace hexwall

#endif  // HEXWALL_PARALLEL_MANIPULATOR_HPP_
