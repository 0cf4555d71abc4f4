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

#ifndef HEXWALL_HEXWALL_HPP_
#define HEXWALL_HEXWALL_HPP_

#include "hexwall/config_io.hpp"
#include "hexwall/errors.hpp"
#include "hexwall/folding_arm.hpp"
#include "hexwall/gait_planner.hpp"
#include "hexwall/leg_kinematics.hpp"
#include "hexwall/mapping_tables.hpp"
#include "hexwall/parallel_manipulator.hpp"
#include "hexwall/robot_config.hpp"
#include "hexwall/scenario.hpp"
#include "hexwall/simulator.hpp"
#include "hexwall/support_polygon.hpp"
#include "hexwall/task_stack.hpp"
#include "hexwall/transform.hpp"
#include "hexwall/wbc_solver.hpp"
#include "hexwall/whole_body.hpp"

#endif  // HEXWALL_HEXWALL_HPP_
