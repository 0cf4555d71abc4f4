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

#include <random>

#include <gtest/gtest.h>

#include "expected_values.hpp"
#include "hexwall/parallel_manipulator.hpp"
#include "hexwall/robot_config.hpp"

namespace hexwall {
namespace {

const RobotConfig kCfg = default_robot_config();
const ModuleGeometry kMod = kCfg.manipulator.modules[0];

Vec2 rotated(const Vec2& v, double a) { return Eigen::Rotation2Dd(a) * v; }

// Rotated-point oracle: O at the origin, L and R on +x, K and M at their
// apex angles; K turns by -theta4 and M by +theta4 about O.
struct PointOracle {
  double dl_primary, dl_aux;
};

PointOracle point_oracle(const ModuleGeometry& g, double th) {
  const Vec2 l(g.l_LO, 0.0), r(g.l_RO, 0.0);
  const Vec2 k = g.l_LO * Vec2(std::cos(g.ang_KOL), std::sin(g.ang_KOL));
  const Vec2 m = g.l_RO * Vec2(std::cos(g.ang_MOR), std::sin(g.ang_MOR));
  return {(k - l).norm() - (rotated(k, -th) - l).norm(), (m - r).norm() - (rotated(m, th) - r).norm()};
}

TEST(ModuleExtension, ZeroAtRest) {
  EXPECT_EQ(module_primary_extension(kMod, 0.0), 0.0);
  EXPECT_EQ(module_aux_extension(kMod, 0.0), 0.0);
}

TEST(ModuleExtension, MatchesReferenceValues) {
  EXPECT_NEAR(module_primary_extension(kMod, 0.3), expected::kModule0[0], 1e-15);
  EXPECT_NEAR(module_aux_extension(kMod, 0.3), expected::kModule0[1], 1e-15);
  EXPECT_NEAR(module_primary_extension(kMod, -0.5), expected::kModule1[0], 1e-15);
  EXPECT_NEAR(module_aux_extension(kMod, -0.5), expected::kModule1[1], 1e-15);
}

TEST(ModuleExtension, CollinearPrimaryLimit) {
  ModuleGeometry g = ModuleGeometry::make(0.12, 0.10, deg2rad(40.0), deg2rad(80.0), {deg2rad(-40.0), deg2rad(40.0)});
  EXPECT_NEAR(module_primary_extension(g, g.ang_KOL), g.l_KL_rest, 1e-15);
}

TEST(ModuleExtension, MatchesRotatedPointOracle) {
  for (int i = 0; i <= 1000; ++i) {
    const double th = kMod.joint_limits.min + (kMod.joint_limits.max - kMod.joint_limits.min) * i / 1000.0;
    const PointOracle o = point_oracle(kMod, th);
    EXPECT_NEAR(module_primary_extension(kMod, th), o.dl_primary, 1e-12);
    EXPECT_NEAR(module_aux_extension(kMod, th), o.dl_aux, 1e-12);
  }
}

TEST(ModuleExtension, OppositeSignsAndMonotone) {
  double prev = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double th = kMod.joint_limits.min + (kMod.joint_limits.max - kMod.joint_limits.min) * i / 1000.0;
    const double p = module_primary_extension(kMod, th), a = module_aux_extension(kMod, th);
    EXPECT_LE(p * a, 0.0);
    if (th != 0.0) {
      EXPECT_NE(std::signbit(p), std::signbit(a));
    }
    if (i > 0) {
      EXPECT_GT(p, prev);
    }
    prev = p;
  }
}

TEST(ModuleExtension, OutOfRangeAndSingular) {
  try {
    module_primary_extension(kMod, kMod.joint_limits.max + 0.01);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
  ModuleGeometry g = kMod;
  try {
    module_primary_length(g, -2.0 * g.ang_KLO);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSingular);
  }
}

TEST(ModuleTorque, ZeroForcesAndRestLever) {
  EXPECT_EQ(module_torque(kMod, 0.2, 0, 0, 0), 0.0);
  EXPECT_NEAR(module_torque(kMod, 0.0, 1.0, 0.0, 0.0), std::sin(kMod.ang_KLO) * kMod.l_LO, 1e-15);
}

TEST(ModuleTorque, LeversMatchReferenceGeometry) {
  const ModuleLevers a = module_levers(kMod, 0.3), b = module_levers(kMod, -0.5);
  EXPECT_NEAR(a.primary, expected::kModule0[2], 1e-13);
  EXPECT_NEAR(a.aux, expected::kModule0[3], 1e-13);
  EXPECT_NEAR(b.primary, expected::kModule1[2], 1e-13);
  EXPECT_NEAR(b.aux, expected::kModule1[3], 1e-13);
}

TEST(ModuleTorque, Antagonism) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> th(kMod.joint_limits.min, kMod.joint_limits.max), f(-1e4, 1e4);
  for (int i = 0; i < 1000; ++i) {
    const double t = th(rng), f4 = f(rng), f5 = f(rng), f6 = f(rng);
    const double base = module_torque(kMod, t, f4, f5, f6);
    EXPECT_GT(module_torque(kMod, t, f4 + 1.0, f5, f6), base);
    EXPECT_LT(module_torque(kMod, t, f4, f5 + 1.0, f6), base);
    EXPECT_LT(module_torque(kMod, t, f4, f5, f6 + 1.0), base);
  }
}

TEST(ModuleTorque, PrimaryLeverIsVirtualWorkDerivative) {
  constexpr double h = 1e-6;
  for (int i = 0; i <= 100; ++i) {
    const double th = kMod.joint_limits.min + h + (kMod.joint_limits.max - kMod.joint_limits.min - 2 * h) * i / 100.0;
    const double fd = (module_primary_extension(kMod, th + h) - module_primary_extension(kMod, th - h)) / (2 * h);
    EXPECT_NEAR(module_levers(kMod, th).primary, fd, 1e-5 * std::abs(fd));
    const double fd_aux = -(module_aux_extension(kMod, th + h) - module_aux_extension(kMod, th - h)) / (2 * h);
    EXPECT_NEAR(module_aux_lever_virtual_work(kMod, th), fd_aux, 1e-5 * std::abs(fd_aux));
  }
}

TEST(ModuleTorque, AuxLeverDiagnosticRatio) {
  // The torque-balance auxiliary lever carries l_LO where the geometry has l_RO.
  for (double th : {-0.6, 0.0, 0.4}) {
    EXPECT_NEAR(module_levers(kMod, th).aux / module_aux_lever_virtual_work(kMod, th), kMod.l_LO / kMod.l_RO, 1e-12);
  }
}

TEST(ModuleAngleFromExtension, ZeroRoundTripAndRange) {
  EXPECT_NEAR(module_angle_from_extension(kMod, 0.0), 0.0, 1e-12);
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> th(kMod.joint_limits.min, kMod.joint_limits.max);
  for (int i = 0; i < 1000; ++i) {
    const double t = th(rng);
    const double dl = module_primary_extension(kMod, t);
    const double back = module_angle_from_extension(kMod, dl);
    EXPECT_NEAR(back, t, 1e-8);
    EXPECT_LT(std::abs(module_primary_extension(kMod, back) - dl), 1e-10);
  }
  try {
    module_angle_from_extension(kMod, module_primary_extension(kMod, kMod.joint_limits.max) + 1e-3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kOutOfRange);
  }
}

TEST(ModuleForceSplit, ReproducesTorqueWithOpposedAux) {
  for (double th : {-0.7, -0.1, 0.0, 0.5}) {
    for (double torque : {-500.0, 0.0, 1200.0}) {
      const auto f = module_force_split(kMod, th, torque);
      EXPECT_NEAR(module_torque(kMod, th, f[0], f[1], f[2]), torque, 1e-9 * (1.0 + std::abs(torque)));
      EXPECT_EQ(f[1], f[2]);
      EXPECT_LE(f[0] * f[1], 0.0);
    }
  }
}

TEST(ModuleGeometry, ClosureInvariants) {
  ModuleGeometry g = kMod;
  g.l_KL_rest *= 1.001;
  try {
    g.validate();
    FAIL();
  } catch (const InvariantViolation& e) {
    EXPECT_EQ(e.invariant(), "law-of-sines closure (primary)");
  }
  g = kMod;
  g.ang_KLO += 0.01;
  EXPECT_THROW(g.validate(), InvariantViolation);
}

TEST(ManipulatorFk, StraightAtZero) {
  const Transform t = manipulator_fk(kCfg.manipulator, {0, 0, 0});
  const auto& s = kCfg.manipulator.segment_lengths;
  EXPECT_LT((t.translation - Vec3(s[0] + s[1] + s[2], 0, 0)).norm(), 1e-15);
}

TEST(ManipulatorFk, SamePitchDifferentPosition) {
  const Transform a = manipulator_fk(kCfg.manipulator, {0.4, 0, 0});
  const Transform b = manipulator_fk(kCfg.manipulator, {0, 0, 0.4});
  EXPECT_LT((a.rotation - b.rotation).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_GT((a.translation - b.translation).norm(), 0.1);
}

TEST(ManipulatorFk, MatchesTransformChain) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> u(-0.8, 0.8);
  for (int i = 0; i < 200; ++i) {
    const std::array<double, 3> q{u(rng), u(rng), u(rng)};
    Transform want;
    for (int k = 0; k < 3; ++k)
      want = want * Transform::from_rotation(rot_z(q[k])) *
             Transform::from_translation(Vec3(kCfg.manipulator.segment_lengths[k], 0, 0));
    EXPECT_LT((manipulator_fk(kCfg.manipulator, q).matrix() - want.matrix()).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(ManipulatorFk, TotalPitchLimit) {
  Manipulator m = kCfg.manipulator;
  m.total_pitch_limit = deg2rad(100.0);
  EXPECT_THROW(manipulator_fk(m, {0.8, 0.8, 0.2}), Error);
  EXPECT_NO_THROW(manipulator_fk(m, {0.8, 0.8, -0.2}));
}

}  // namespace
}  // namespace hexwall
