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

#ifndef HEXWALL_MAPPING_TABLES_HPP_
#define HEXWALL_MAPPING_TABLES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "hexwall/errors.hpp"
#include "hexwall/folding_arm.hpp"
#include "hexwall/parallel_manipulator.hpp"
#include "hexwall/robot_config.hpp"

namespace hexwall {

struct MappingTable {
  std::string name;  // file stem
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string csv() const {
    std::string out;
    for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
    out += '\n';
    char buf[32];
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", r[i]);
        if (i) out += ',';
        out += buf;
      }
      out += '\n';
    }
    return out;
  }
};

/// Whole-degree grid covering [lo, hi].
inline std::vector<double> degree_grid(const JointLimit& lim) {
  std::vector<double> out;
  const long first = std::lround(std::ceil(rad2deg(lim.min) - 1e-9));
  const long last = std::lround(std::floor(rad2deg(lim.max) + 1e-9));
  for (long d = first; d <= last; ++d) out.push_back(std::clamp(deg2rad(static_cast<double>(d)), lim.min, lim.max));
  return out;
}

inline MappingTable fold_mapping_table(const std::string& name, const FoldLinkGeometry& g) {
  MappingTable t{name, {"theta_rad", "extension_m", "lever_arm_m"}, {}};
  for (double th : degree_grid(g.joint_limits)) t.rows.push_back({th, fold_extension(g, th), fold_lever_arm(g, th)});
  return t;
}

inline MappingTable module_mapping_table(const std::string& name, const ModuleGeometry& g) {
  MappingTable t{name, {"theta4_rad", "dl_primary_m", "dl_aux_m", "lever_primary_m", "lever_aux_m"}, {}};
  for (double th : degree_grid(g.joint_limits)) {
    const ModuleLevers lv = module_levers(g, th);
    t.rows.push_back({th, module_primary_extension(g, th), module_aux_extension(g, th), lv.primary, lv.aux});
  }
  return t;
}

/// Tables for the three folding-arm joints, the three manipulator modules
/// and the three leg actuator linkages.
inline std::vector<MappingTable> mapping_tables(const RobotConfig& cfg) {
  std::vector<MappingTable> out;
  for (int k = 0; k < 3; ++k) out.push_back(fold_mapping_table("arm_joint" + std::to_string(k + 1), cfg.arm.joints[k]));
  for (int k = 0; k < 3; ++k)
    out.push_back(module_mapping_table("manipulator_module" + std::to_string(k + 1), cfg.manipulator.modules[k]));
  static const char* kLegJoints[3] = {"coxa", "femur", "tibia"};
  for (int k = 0; k < 3; ++k) out.push_back(fold_mapping_table(std::string("leg_") + kLegJoints[k], cfg.leg_actuators[k]));
  return out;
}

/// Writes one CSV per table into `out_dir`; returns the paths written.
inline std::vector<std::string> export_mapping_tables(const RobotConfig& cfg, const std::string& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + out_dir + ": " + ec.message());
  std::vector<std::string> paths;
  for (const auto& t : mapping_tables(cfg)) {
    const std::string path = (std::filesystem::path(out_dir) / (t.name + ".csv")).string();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::kIoError, "cannot write " + path);
    f << t.csv();
    paths.push_back(path);
  }
  return paths;
}

}  // namespace hexwall

#endif  // HEXWALL_MAPPING_TABLES_HPP_
