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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hexwall/hexwall.hpp"

namespace {

using namespace hexwall;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const RobotConfig& config() {
  static const RobotConfig cfg = default_robot_config();
  return cfg;
}

// 1. Closed-form leg FK against the D-H link product.
Outcome fk_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> ang(-kPi, kPi);
  double worst = 0.0;
  for (const auto& leg : config().legs)
    for (int i = 0; i < 10000 / kNumLegs + 1; ++i) {
      const LegJointAngles q{ang(rng), ang(rng), ang(rng)};
      const Transform chain = compose(dh_link_transform({leg.a1, kPi / 2, 0, 0}, q.theta1),
                                      compose(dh_link_transform({leg.a2, 0, 0, 0}, q.theta2),
                                              dh_link_transform({leg.a3, 0, 0, 0}, q.theta3)));
      worst = std::max(worst, (leg_fk(leg, q) - chain.translation).norm());
    }
  const double dt = seconds_since(t0);
  return {worst < 1e-12 && dt < 1.0, fmt("max error %.3g m over 1e4 samples, %.3f s", worst, dt)};
}

// 2. IK round trip and rejection of unreachable targets.
Outcome ik_round_trip() {
  const auto t0 = std::chrono::steady_clock::now();
  const LegGeometry& leg = config().legs[0];
  std::mt19937_64 rng(1002);
  auto draw = [&](const JointLimit& l, double lo, double hi) {
    std::uniform_real_distribution<double> d(std::max(l.min, lo), std::min(l.max, hi));
    return d(rng);
  };
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const LegJointAngles q{draw(leg.joint_limits[0], -kPi, kPi), draw(leg.joint_limits[1], -kPi, kPi),
                           draw(leg.joint_limits[2], -kPi + 0.05, -0.05)};
    const LegJointAngles back = leg_ik(leg, leg_fk(leg, q));
    for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(back[k] - q[k]));
  }
  const double reach = leg.a1 + leg.a2 + leg.a3;
  std::uniform_real_distribution<double> dir(-1.0, 1.0), extra(1e-6, 1.0);
  int unreachable_ok = 0, wrong = 0;
  for (int i = 0; i < 10000; ++i) {
    Vec3 d(dir(rng), dir(rng), dir(rng));
    if (d.norm() < 1e-3) continue;
    const Vec3 p = d.normalized() * (reach + extra(rng));  // beyond full extension
    try {
      (void)leg_ik(leg, p, false);
      ++wrong;
    } catch (const Error& e) {
      (e.code() == ErrorCode::kUnreachable ? unreachable_ok : wrong) += 1;
    }
  }
  std::uniform_real_distribution<double> box(-1.4, 1.4);
  int solved = 0;
  for (int i = 0; i < 10000; ++i) {
    const Vec3 p(box(rng), box(rng), box(rng));
    try {
      const LegJointAngles q = leg_ik(leg, p, false);
      if ((leg_fk(leg, q) - p).norm() > 1e-9) ++wrong;
      ++solved;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnreachable) ++wrong;
    }
  }
  const double dt = seconds_since(t0);
  return {worst < 1e-9 && wrong == 0 && dt < 1.0,
          fmt("max round-trip error %.3g rad; %d unreachable rejected, %d random targets solved, %d wrong answers; %.3f s",
              worst, unreachable_ok, solved, wrong, dt)};
}

// Point oracles: explicit anchor coordinates, rotate, measure distance.
double fold_point_length(const FoldLinkGeometry& g, double th) {
  const Vec2 b(g.l_anchor_a, 0.0);
  const Vec2 c = g.l_anchor_b * Vec2(std::cos(g.rest_angle + th), std::sin(g.rest_angle + th));
  return (b - c).norm();
}

std::pair<double, double> module_point_extensions(const ModuleGeometry& g, double th) {
  const Vec2 l(g.l_LO, 0.0), r(g.l_RO, 0.0);
  const Vec2 k = g.l_LO * Vec2(std::cos(g.ang_KOL), std::sin(g.ang_KOL));
  const Vec2 m = g.l_RO * Vec2(std::cos(g.ang_MOR), std::sin(g.ang_MOR));
  const Vec2 k1 = Eigen::Rotation2Dd(-th) * k, m1 = Eigen::Rotation2Dd(th) * m;
  return {(k - l).norm() - (k1 - l).norm(), (m - r).norm() - (m1 - r).norm()};
}

// 3. Arm cylinder maps and module maps against the point oracles.
Outcome linkage_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (const auto& g : config().arm.joints) {
    const double l0 = fold_point_length(g, 0.0);
    for (int i = 0; i < 1000; ++i) {
      const double th = g.joint_limits.min + (g.joint_limits.max - g.joint_limits.min) * i / 999.0;
      worst = std::max(worst, std::abs(fold_extension(g, th) - (fold_point_length(g, th) - l0)));
    }
  }
  for (const auto& g : config().manipulator.modules)
    for (int i = 0; i < 1000; ++i) {
      const double th = g.joint_limits.min + (g.joint_limits.max - g.joint_limits.min) * i / 999.0;
      const auto [p, a] = module_point_extensions(g, th);
      worst = std::max(worst, std::abs(module_primary_extension(g, th) - p));
      worst = std::max(worst, std::abs(module_aux_extension(g, th) - a));
    }
  const double dt = seconds_since(t0);
  return {worst < 1e-9 && dt < 1.0, fmt("max deviation %.3g m over 3 arm joints and 3 modules, %.3f s", worst, dt)};
}

// 4. fold_torque against the finite-difference virtual-work rate.
Outcome virtual_work() {
  constexpr double h = 1e-6;
  double worst = 0.0;
  auto sweep = [&](const FoldLinkGeometry& g) {
    const double lo = g.joint_limits.min + h, hi = g.joint_limits.max - h;
    for (int i = 0; i <= 1000; ++i) {
      const double th = lo + (hi - lo) * i / 1000.0;
      const double force = 1000.0;
      const double fd = force * (fold_extension(g, th + h) - fold_extension(g, th - h)) / (2 * h);
      worst = std::max(worst, std::abs(fold_torque(g, th, force) - fd) / std::abs(fd));
    }
  };
  for (const auto& g : config().arm.joints) sweep(g);
  for (const auto& g : config().leg_actuators) sweep(g);

  // Module diagnostic: primary lever against its virtual-work rate, and the
  // auxiliary lever of the torque balance against the geometric one.
  double primary_worst = 0.0, ratio_lo = 1e9, ratio_hi = -1e9;
  for (const auto& g : config().manipulator.modules) {
    const double lo = g.joint_limits.min + h, hi = g.joint_limits.max - h;
    for (int i = 0; i <= 1000; ++i) {
      const double th = lo + (hi - lo) * i / 1000.0;
      const double fd = (module_primary_extension(g, th + h) - module_primary_extension(g, th - h)) / (2 * h);
      primary_worst = std::max(primary_worst, std::abs(module_levers(g, th).primary - fd) / std::abs(fd));
      const double fd_aux = -(module_aux_extension(g, th + h) - module_aux_extension(g, th - h)) / (2 * h);
      const double ratio = module_levers(g, th).aux / fd_aux;
      ratio_lo = std::min(ratio_lo, ratio);
      ratio_hi = std::max(ratio_hi, ratio);
    }
  }
  return {worst < 1e-5,
          fmt("fold_torque max relative error %.3g; module diagnostic: primary lever rel. error %.3g, "
              "auxiliary lever / virtual-work rate in [%.6f, %.6f] (l_LO/l_RO = %.6f)",
              worst, primary_worst, ratio_lo, ratio_hi,
              config().manipulator.modules[0].l_LO / config().manipulator.modules[0].l_RO)};
}

double max_rest_extension(const RobotConfig& cfg) {
  double worst = 0.0;
  for (const auto& g : cfg.leg_actuators) worst = std::max(worst, std::abs(detail::fold_extension_unchecked(g, 0.0)));
  for (const auto& g : cfg.arm.joints) worst = std::max(worst, std::abs(detail::fold_extension_unchecked(g, 0.0)));
  for (const auto& m : cfg.manipulator.modules) {
    worst = std::max(worst, std::abs(module_primary_extension(m, 0.0)));
    worst = std::max(worst, std::abs(module_aux_extension(m, 0.0)));
  }
  return worst;
}

// 5. Zero extensions at zero angles for the default and random valid configs.
Outcome rest_closure() {
  double worst = max_rest_extension(config());
  std::mt19937_64 rng(1005);
  std::uniform_real_distribution<double> len(0.05, 0.6), rest(0.2, 2.6), apex(0.4, 2.0), u(0.0, 1.0);
  int accepted = 0, rejected = 0;
  for (int i = 0; i < 1000; ++i) {
    RobotConfig cfg = config();
    for (auto& g : cfg.arm.joints) {
      const double r = rest(rng);
      g = FoldLinkGeometry::make(len(rng), len(rng), r, {-0.9 * u(rng) * r, 0.9 * u(rng) * (kPi - r)}, g.direction);
    }
    for (int j = 0; j < 3; ++j) {
      auto& g = cfg.leg_actuators[j];
      const JointLimit lim = cfg.legs[0].joint_limits[j];
      const double r = -lim.min + u(rng) * (kPi - lim.max + lim.min);
      g = FoldLinkGeometry::make(len(rng), len(rng), r, lim, g.direction);
    }
    for (auto& m : cfg.manipulator.modules) {
      const double kol = apex(rng), mor = apex(rng);
      const double span = 0.9 * std::min({kol, mor, kPi - kol, kPi - mor});
      m = ModuleGeometry::make(len(rng), len(rng), kol, mor, {-span, span});
    }
    try {
      cfg.validate();
    } catch (const InvariantViolation&) {
      ++rejected;
      continue;
    }
    ++accepted;
    worst = std::max(worst, max_rest_extension(robot_config_from_json(robot_config_to_json(cfg))));
  }
  return {worst < 1e-12 && accepted > 0,
          fmt("max |extension| at zero angles %.3g m; default config plus %d random valid configs (%d rejected at load)",
              worst, accepted, rejected)};
}

Eigen::MatrixXd random_matrix(std::mt19937_64& rng, int r, int c) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::MatrixXd m(r, c);
  for (int i = 0; i < r; ++i)
    for (int k = 0; k < c; ++k) m(i, k) = n(rng);
  return m;
}

// 6. Appending lower-priority levels leaves higher residuals unchanged.
Outcome hierarchy_invariance() {
  std::mt19937_64 rng(1006);
  std::uniform_int_distribution<int> dof(6, 30), levels(3, 5), rows(1, 10);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = dof(rng), l = levels(rng);
    std::vector<HierarchyLevel> stack;
    for (int k = 0; k < l; ++k) {
      const int r = rows(rng);
      std::uniform_real_distribution<double> w(0.5, 2.0);
      VecX weights(r);
      for (int i = 0; i < r; ++i) weights(i) = w(rng);
      stack.push_back({random_matrix(rng, r, n), random_matrix(rng, r, 1), weights});
    }
    const HierarchyResult full = solve_hierarchy(stack, n);
    for (int k = 1; k < l; ++k) {
      const HierarchyResult part = solve_hierarchy({stack.begin(), stack.begin() + k}, n);
      for (int p = 0; p < k; ++p) worst = std::max(worst, std::abs(part.residuals[p] - full.residuals[p]));
    }
  }
  return {worst < 1e-9, fmt("max residual change %.3g over 100 random stacks", worst)};
}

struct Run {
  SimulationResult result;
  double seconds = 0.0;
  std::string error;
};

Run run(const Scenario& sc) {
  Run r;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.result = run_scenario(config(), sc);
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.seconds = seconds_since(t0);
  return r;
}

// 7. Full turn in place.
Outcome turn_in_place() {
  const Run r = run(turn_in_place_scenario());
  if (!r.error.empty()) return {false, r.error};
  const auto& m = r.result.metrics;
  const double yaw_err = std::abs(m.yaw - 2.0 * kPi);
  return {yaw_err < deg2rad(1.0) && m.displacement < 5e-3 && m.min_stability_margin > 0.0 && m.max_foot_slip < 1e-9 &&
              r.seconds < 30.0,
          fmt("yaw error %.3g deg, drift %.3g m, min margin %.4f m, max slip %.3g m, %.2f s", rad2deg(yaw_err),
              m.displacement, m.min_stability_margin, m.max_foot_slip, r.seconds)};
}

// 8. Walk while installing.
Outcome walk_and_install() {
  const Run r = run(walk_and_install_scenario());
  if (!r.error.empty()) return {false, r.error};
  const auto& m = r.result.metrics;
  return {m.ee_rms_position_error < 5e-3 && m.displacement >= 0.9 * m.commanded_displacement &&
              m.min_stability_margin > 0.0 && r.seconds < 30.0,
          fmt("EE RMS error %.3g m, displacement %.4f of %.4f m commanded, min margin %.4f m, %.2f s",
              m.ee_rms_position_error, m.displacement, m.commanded_displacement, m.min_stability_margin, r.seconds)};
}

// 9. Walk while adjusting the panel orientation.
Outcome walk_and_adjust() {
  const Run r = run(walk_and_adjust_scenario());
  if (!r.error.empty()) return {false, r.error};
  const auto& m = r.result.metrics;
  return {m.ee_rms_angle_error < deg2rad(0.5) && r.seconds < 30.0,
          fmt("EE RMS angle error %.3g deg over %zu samples, displacement %.4f m, %.2f s", rad2deg(m.ee_rms_angle_error),
              m.ee_samples, m.displacement, r.seconds)};
}

// 10. Two runs of every bundled scenario give identical CSV logs.
Outcome determinism() {
  std::string detail;
  bool ok = true;
  for (const auto& sc : bundled_scenarios()) {
    std::string csv[2];
    for (auto& c : csv) {
      const Run r = run(sc);
      if (!r.error.empty()) return {false, sc.name + ": " + r.error};
      std::ostringstream os;
      write_log_csv(os, r.result.log);
      c = os.str();
    }
    const bool same = csv[0] == csv[1];
    ok = ok && same;
    detail += (detail.empty() ? "" : ", ") + sc.name + (same ? " identical" : " DIFFERENT");
  }
  return {ok, detail};
}

// 11. Exported tables: strictly monotone extensions and exact inversion.
Outcome mapping_tables_check() {
  const auto tables = mapping_tables(config());
  bool monotone = true;
  for (const auto& t : tables)
    for (std::size_t i = 1; i < t.rows.size(); ++i) monotone = monotone && t.rows[i][1] > t.rows[i - 1][1];
  double worst = 0.0;
  for (int k = 0; k < 3; ++k) {
    const auto& g = config().arm.joints[k];
    for (const auto& row : tables[k].rows)
      worst = std::max(worst, std::abs(fold_angle_from_extension(g, row[1]) - row[0]));
    const auto& m = config().manipulator.modules[k];
    for (const auto& row : tables[3 + k].rows)
      worst = std::max(worst, std::abs(module_angle_from_extension(m, row[1]) - row[0]));
  }
  return {monotone && worst < 1e-8,
          fmt("%zu tables %s; max angle round-trip error %.3g rad over 6 arm/manipulator joints", tables.size(),
              monotone ? "strictly monotone" : "NOT monotone", worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"FK equivalence", fk_equivalence},
      {"IK round trip", ik_round_trip},
      {"linkage oracle equivalence", linkage_oracle},
      {"virtual-work identity", virtual_work},
      {"rest closure", rest_closure},
      {"hierarchy invariance", hierarchy_invariance},
      {"turn in place 360", turn_in_place},
      {"walk and install", walk_and_install},
      {"walk and adjust", walk_and_adjust},
      {"determinism", determinism},
      {"mapping tables", mapping_tables_check},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("[%s] criterion %zu: %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
