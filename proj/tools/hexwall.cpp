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

// hexwall command-line front end.
//
//   hexwall run <scenario> [--config robot.json] [--out dir]
//   hexwall tables [--config robot.json] --out dir
//   hexwall validate --config robot.json
//   hexwall list-scenarios
//   hexwall show-scenario <name>
//   hexwall show-config
//
// Exit codes: 0 success, 2 validation failure, 3 scenario infeasible,
// 1 anything else.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "hexwall/hexwall.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitValidation = 2;
constexpr int kExitInfeasible = 3;

hexwall::RobotConfig config_or_default(const std::string& path) {
  return path.empty() ? hexwall::default_robot_config() : hexwall::load_config(path);
}

hexwall::Scenario resolve_scenario(const std::string& arg) {
  if (auto s = hexwall::find_bundled_scenario(arg)) return *s;
  if (std::filesystem::exists(arg)) return hexwall::load_scenario(arg);
  throw hexwall::Error(hexwall::ErrorCode::kParseError, "no bundled scenario or file named '" + arg + "'");
}

bool is_validation_error(const hexwall::Error& e) {
  return e.code() == hexwall::ErrorCode::kParseError || e.code() == hexwall::ErrorCode::kInvariantViolation;
}

int cmd_run(const std::string& scenario_arg, const std::string& config_path, const std::string& out_dir) {
  hexwall::RobotConfig cfg;
  hexwall::Scenario sc;
  try {
    cfg = config_or_default(config_path);
    sc = resolve_scenario(scenario_arg);
  } catch (const hexwall::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  hexwall::SimulationResult res;
  try {
    res = hexwall::run_scenario(cfg, sc);
  } catch (const hexwall::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_validation_error(e) ? kExitValidation : kExitInfeasible;
  }
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  const auto csv_path = dir / (sc.name + ".csv");
  const auto json_path = dir / (sc.name + "_metrics.json");
  std::ofstream csv(csv_path, std::ios::binary);
  hexwall::write_log_csv(csv, res.log);
  std::ofstream js(json_path, std::ios::binary);
  js << hexwall::metrics_to_json(res.metrics).dump(2) << "\n";
  if (!csv || !js) {
    std::cerr << "error: failed writing output to " << dir << "\n";
    return kExitOther;
  }
  const auto& m = res.metrics;
  std::printf("%s: %zu ticks, displacement %.4f m (commanded %.4f m), yaw %.4f rad (commanded %.4f rad)\n",
              sc.name.c_str(), m.ticks, m.displacement, m.commanded_displacement, m.yaw, m.commanded_yaw);
  std::printf("  stability margin min %.4f m, mean %.4f m; max foot slip %.3g m; saturated ticks %zu\n",
              m.min_stability_margin, m.mean_stability_margin, m.max_foot_slip, m.saturated_ticks);
  if (m.ee_samples > 0)
    std::printf("  end-effector RMS error %.3g m, %.3g deg\n", m.ee_rms_position_error,
                hexwall::rad2deg(m.ee_rms_angle_error));
  std::printf("  wrote %s and %s\n", csv_path.string().c_str(), json_path.string().c_str());
  return kExitOk;
}

int cmd_tables(const std::string& config_path, const std::string& out_dir) {
  hexwall::RobotConfig cfg;
  try {
    cfg = config_or_default(config_path);
  } catch (const hexwall::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  try {
    for (const auto& p : hexwall::export_mapping_tables(cfg, out_dir)) std::printf("%s\n", p.c_str());
  } catch (const hexwall::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return kExitOk;
}

int cmd_validate(const std::string& config_path) {
  try {
    const hexwall::RobotConfig cfg = hexwall::load_config(config_path);
    for (const auto& w : hexwall::arm_envelope_warnings(cfg.arm)) std::printf("warning: %s\n", w.c_str());
    std::printf("%s: ok\n", config_path.c_str());
    return kExitOk;
  } catch (const hexwall::InvariantViolation& e) {
    std::cerr << config_path << ": invariant violated: " << e.invariant() << "\n  " << e.what() << "\n";
    return kExitValidation;
  } catch (const hexwall::Error& e) {
    std::cerr << config_path << ": " << e.what() << "\n";
    return kExitValidation;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hexwall: hexapod wall-installation robot kinematics and scenario simulator"};
  app.require_subcommand(1);

  std::string scenario_arg, config_path, out_dir = "out", name;

  auto* run = app.add_subcommand("run", "Simulate a bundled scenario or a scenario file");
  run->add_option("scenario", scenario_arg, "Bundled scenario name or path to a scenario JSON file")->required();
  run->add_option("--config", config_path, "Robot config JSON (default: built-in robot)");
  run->add_option("--out", out_dir, "Output directory for the CSV log and metrics JSON")->capture_default_str();

  auto* tables = app.add_subcommand("tables", "Export cylinder extension / lever-arm tables");
  tables->add_option("--config", config_path, "Robot config JSON (default: built-in robot)");
  tables->add_option("--out", out_dir, "Output directory")->required();

  auto* validate = app.add_subcommand("validate", "Load and check a robot config");
  validate->add_option("--config", config_path, "Robot config JSON")->required();

  auto* list = app.add_subcommand("list-scenarios", "List bundled scenarios");

  auto* show = app.add_subcommand("show-scenario", "Print a bundled scenario as JSON");
  show->add_option("name", name, "Bundled scenario name")->required();

  auto* show_cfg = app.add_subcommand("show-config", "Print the built-in robot config as JSON");

  CLI11_PARSE(app, argc, argv);

  if (*run) return cmd_run(scenario_arg, config_path, out_dir);
  if (*tables) return cmd_tables(config_path, out_dir);
  if (*validate) return cmd_validate(config_path);
  if (*list) {
    for (const auto& s : hexwall::bundled_scenarios()) std::printf("%-20s %s\n", s.name.c_str(), s.description.c_str());
    return kExitOk;
  }
  if (*show) {
    const auto s = hexwall::find_bundled_scenario(name);
    if (!s) {
      std::cerr << "error: unknown scenario '" << name << "'\n";
      return kExitValidation;
    }
    std::cout << hexwall::scenario_to_json(*s).dump(2) << "\n";
    return kExitOk;
  }
  if (*show_cfg) {
    std::cout << hexwall::save_robot_config(hexwall::default_robot_config());
    return kExitOk;
  }
  return kExitOther;
}
