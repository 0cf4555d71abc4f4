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

#ifndef HEXWALL_SUPPORT_POLYGON_HPP_
#define HEXWALL_SUPPORT_POLYGON_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "hexwall/errors.hpp"
#include "hexwall/transform.hpp"

namespace hexwall {

inline double cross2(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

/// Counter-clockwise convex hull (monotone chain); collinear points dropped.
inline std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

inline double polygon_area(std::span<const Vec2> poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % poly.size()];
    a += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * a;
}

inline double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len_sq = ab.squaredNorm();
  const double s = len_sq > 0.0 ? std::clamp((p - a).dot(ab) / len_sq, 0.0, 1.0) : 0.0;
  return (p - (a + s * ab)).norm();
}

/**
 * Signed distance from the CoM ground projection to the boundary of the
 * stance-foot convex hull: positive inside, negative outside.
 *
 * Throws DegenerateSupport for fewer than three feet or a hull with area
 * below 1e-6 m^2.
 */
inline double stability_margin(std::span<const Vec3> stance_feet, const Vec2& com_xy) {
  if (stance_feet.size() < 3) throw Error(ErrorCode::kDegenerateSupport, "fewer than three stance feet");
  std::vector<Vec2> pts;
  pts.reserve(stance_feet.size());
  for (const auto& f : stance_feet) pts.emplace_back(f.x(), f.y());
  const auto hull = convex_hull(std::move(pts));
  if (hull.size() < 3 || polygon_area(hull) < 1e-6)
    throw Error(ErrorCode::kDegenerateSupport, "support polygon area below 1e-6 m^2");

  double dist = std::numeric_limits<double>::infinity();
  bool inside = true;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vec2& a = hull[i];
    const Vec2& b = hull[(i + 1) % hull.size()];
    dist = std::min(dist, point_segment_distance(com_xy, a, b));
    if (cross2(a, b, com_xy) < 0.0) inside = false;
  }
  return inside ? dist : -dist;
}

}  // namespace hexwall

#endif  // HEXWALL_SUPPORT_POLYGON_HPP_
