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

#ifndef HEXWALL_TRANSFORM_HPP_
#define HEXWALL_TRANSFORM_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

namespace hexwall {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

inline constexpr double kPi = std::numbers::pi;

inline constexpr double deg2rad(double deg) { return deg * (kPi / 180.0); }
inline constexpr double rad2deg(double rad) { return rad * (180.0 / kPi); }

// Wraps an angle into (-pi, pi].
inline double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

/// Rigid transform stored as a 3x3 rotation block plus a translation.
struct HomogeneousTransform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  static HomogeneousTransform identity() { return {}; }

  static HomogeneousTransform from_translation(const Vec3& p) {
    HomogeneousTransform t;
    t.translation = p;
    return t;
  }

  static HomogeneousTransform from_rotation(const Mat3& r) {
    HomogeneousTransform t;
    t.rotation = r;
    return t;
  }

  static HomogeneousTransform from_matrix(const Mat4& m) {
    HomogeneousTransform t;
    t.rotation = m.topLeftCorner<3, 3>();
    t.translation = m.topRightCorner<3, 1>();
    return t;
  }

  Mat4 matrix() const {
    Mat4 m = Mat4::Identity();
    m.topLeftCorner<3, 3>() = rotation;
    m.topRightCorner<3, 1>() = translation;
    return m;
  }

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
  Vec3 inverse_apply(const Vec3& p) const { return rotation.transpose() * (p - translation); }
};

using Transform = HomogeneousTransform;

inline Transform compose(const Transform& t1, const Transform& t2) {
  Transform out;
  out.rotation = t1.rotation * t2.rotation;
  out.translation = t1.rotation * t2.translation + t1.translation;
  return out;
}

inline Transform operator*(const Transform& t1, const Transform& t2) { return compose(t1, t2); }

inline Transform invert(const Transform& t) {
  Transform out;
  out.rotation = t.rotation.transpose();
  out.translation = -(out.rotation * t.translation);
  return out;
}

inline Mat3 rot_x(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r << 1, 0, 0, 0, c, -s, 0, s, c;
  return r;
}

inline Mat3 rot_y(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r << c, 0, s, 0, 1, 0, -s, 0, c;
  return r;
}

inline Mat3 rot_z(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r << c, -s, 0, s, c, 0, 0, 0, 1;
  return r;
}

// Z-Y-X (yaw, pitch, roll) convention: R = Rz(yaw) Ry(pitch) Rx(roll).
inline Mat3 rotation_from_ypr(double yaw, double pitch, double roll) {
  return rot_z(yaw) * rot_y(pitch) * rot_x(roll);
}

struct YawPitchRoll {
  double yaw = 0.0;
  double pitch = 0.0;
  double roll = 0.0;
};

inline YawPitchRoll ypr_from_rotation(const Mat3& r) {
  YawPitchRoll out;
  out.pitch = std::asin(std::clamp(-r(2, 0), -1.0, 1.0));
  out.yaw = std::atan2(r(1, 0), r(0, 0));
  out.roll = std::atan2(r(2, 1), r(2, 2));
  return out;
}

inline Mat3 skew(const Vec3& v) {
  Mat3 s;
  s << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return s;
}

// Rotation vector w such that exp([w]x) = r (angle in [0, pi]).
inline Vec3 rotation_log(const Mat3& r) {
  const Eigen::AngleAxisd aa(r);
  return aa.angle() * aa.axis();
}

// Geodesic angle between two rotations.
inline double rotation_distance(const Mat3& a, const Mat3& b) {
  return rotation_log(a.transpose() * b).norm();
}

inline double orthonormality_error(const Mat3& r) {
  return (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff();
}

// Nearest proper rotation (polar decomposition via SVD).
inline Mat3 nearest_rotation(const Mat3& m) {
  Eigen::JacobiSVD<Mat3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat3 u = svd.matrixU();
  const Mat3 v = svd.matrixV();
  if ((u * v.transpose()).determinant() < 0.0) u.col(2) *= -1.0;
  return u * v.transpose();
}

inline Transform reorthonormalized(const Transform& t) {
  Transform out = t;
  out.rotation = nearest_rotation(t.rotation);
  return out;
}

/// Running product of transforms; repairs rotation drift every
/// `kRepairInterval` compositions.
class TransformAccumulator {
 public:
  static constexpr int kRepairInterval = 1000;

  explicit TransformAccumulator(Transform start = Transform::identity()) : value_(start) {}

  const Transform& value() const { return value_; }
  int compositions() const { return count_; }

  void append(const Transform& t) {
    value_ = compose(value_, t);
    if (++count_ % kRepairInterval == 0) value_ = reorthonormalized(value_);
  }

 private:
  Transform value_;
  int count_ = 0;
};

/**
 * One row of a Denavit-Hartenberg table (standard convention).
 *
 * Link transform is Rot_z(theta) Trans_z(d) Trans_x(a) Rot_x(alpha), with
 * theta = theta_offset + joint angle.
 */
struct DHRow {
  double a = 0.0;
  double alpha = 0.0;
  double d = 0.0;
  double theta_offset = 0.0;
};

inline Transform dh_link_transform(const DHRow& row, double theta) {
  const double th = row.theta_offset + theta;
  const double ct = std::cos(th), st = std::sin(th);
  const double ca = std::cos(row.alpha), sa = std::sin(row.alpha);
  Transform t;
  t.rotation << ct, -st * ca, st * sa,
                st, ct * ca, -ct * sa,
                0.0, sa, ca;
  t.translation << row.a * ct, row.a * st, row.d;
  return t;
}

}  // namespace hexwall

#endif  // HEXWALL_TRANSFORM_HPP_
