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

#ifndef HEXWALL_TASK_STACK_HPP_
#define HEXWALL_TASK_STACK_HPP_

#include <algorithm>
#include <optional>
#include <string_view>
#include <vector>

#include "hexwall/errors.hpp"
#include "hexwall/gait_planner.hpp"
#include "hexwall/transform.hpp"

namespace hexwall {

enum class TaskKind { kTrunkPose, kEndEffectorPose, kSwingFootPosition, kStanceFootPin };

inline std::string_view to_string(TaskKind k) {
  switch (k) {
    case TaskKind::kTrunkPose: return "trunk-pose";
    case TaskKind::kEndEffectorPose: return "end-effector-pose";
    case TaskKind::kSwingFootPosition: return "swing-foot-position";
    case TaskKind::kStanceFootPin: return "stance-foot-pin";
  }
  return "unknown";
}

inline bool is_pose_task(TaskKind k) { return k == TaskKind::kTrunkPose || k == TaskKind::kEndEffectorPose; }

/// Pose (or point) target with feed-forward velocity, world frame.
struct PoseTarget {
  Transform pose;
  Vec3 linear_velocity = Vec3::Zero();
  Vec3 angular_velocity = Vec3::Zero();
};

struct Task {
  TaskKind kind = TaskKind::kTrunkPose;
  int leg = -1;  // foot tasks only
  PoseTarget target;  // points use target.pose.translation
  int priority = 0;
  double weight = 1.0;

  int dim() const { return is_pose_task(kind) ? 6 : 3; }
};

/// Rank of each non-pin task class; pins are always rank 0.
struct PriorityOrder {
  int end_effector = 1;
  int trunk = 2;
  int swing = 3;
};

struct TaskStack {
  std::vector<Task> tasks;

  int num_levels() const {
    int n = 0;
    for (const auto& t : tasks) n = std::max(n, t.priority + 1);
    return n;
  }

  std::vector<const Task*> level(int p) const {
    std::vector<const Task*> out;
    for (const auto& t : tasks)
      if (t.priority == p) out.push_back(&t);
    return out;
  }

  int count(TaskKind k) const {
    return static_cast<int>(std::count_if(tasks.begin(), tasks.end(), [k](const Task& t) { return t.kind == k; }));
  }

  void validate() const {
    const int n = num_levels();
    for (const auto& t : tasks) {
      if (t.kind == TaskKind::kStanceFootPin && t.priority != 0)
        throw InvariantViolation("stance pins at priority 0", "task stack");
      if (t.priority < 0 || !(t.weight > 0.0)) throw InvariantViolation("non-negative priority, positive weight", "task stack");
    }
    for (int p = 0; p < n; ++p)
      if (level(p).empty()) throw InvariantViolation("contiguous priorities", "task stack");
  }
};

/**
 * Task stack at time t: stance pins for every stance leg, then end-effector,
 * trunk and swing-foot tasks in the order given by `order`. Absent classes
 * are skipped and the remaining ranks compacted so priorities stay
 * contiguous from 0.
 */
inline TaskStack assemble_task_stack(const FootstepPlan& plan, const PoseTarget& trunk_target,
                                     const std::optional<PoseTarget>& ee_target, double t,
                                     const PriorityOrder& order = {}) {
  TaskStack stack;
  std::vector<int> swing_legs;
  for (int leg = 0; leg < kNumLegs; ++leg) {
    if (plan.in_stance(leg, t)) {
      Task pin;
      pin.kind = TaskKind::kStanceFootPin;
      pin.leg = leg;
      pin.target.pose.translation = plan.phase_at(leg, t).start;
      pin.priority = 0;
      stack.tasks.push_back(pin);
    } else {
      swing_legs.push_back(leg);
    }
  }

  struct Entry {
    int rank;
    int cls;  // 0 ee, 1 trunk, 2 swing
  };
  std::vector<Entry> classes;
  if (ee_target) classes.push_back({order.end_effector, 0});
  classes.push_back({order.trunk, 1});
  if (!swing_legs.empty()) classes.push_back({order.swing, 2});
  std::stable_sort(classes.begin(), classes.end(), [](const Entry& a, const Entry& b) { return a.rank < b.rank; });

  int next = 1;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (i > 0 && classes[i].rank == classes[i - 1].rank) --next;  // shared rank
    const int p = next++;
    switch (classes[i].cls) {
      case 0: {
        Task ee;
        ee.kind = TaskKind::kEndEffectorPose;
        ee.target = *ee_target;
        ee.priority = p;
        stack.tasks.push_back(ee);
        break;
      }
      case 1: {
        Task trunk;
        trunk.kind = TaskKind::kTrunkPose;
        trunk.target = trunk_target;
        trunk.priority = p;
        stack.tasks.push_back(trunk);
        break;
      }
      default:
        for (int leg : swing_legs) {
          Task sw;
          sw.kind = TaskKind::kSwingFootPosition;
          sw.leg = leg;
          sw.target.pose.translation = plan.foot_target(leg, t);
          sw.target.linear_velocity = plan.foot_velocity(leg, t);
          sw.priority = p;
          stack.tasks.push_back(sw);
        }
    }
  }
  return stack;
}

/// Trunk target from the plan's body reference at time t.
inline PoseTarget trunk_target_from_plan(const FootstepPlan& plan, double t) {
  PoseTarget tgt;
  tgt.pose = plan.body.transform(t);
  const auto [v, w] = plan.body.velocity(t);
  tgt.linear_velocity = Vec3(v.x(), v.y(), 0.0);
  tgt.angular_velocity = Vec3(0.0, 0.0, w);
  return tgt;
}

}  // namespace hexwall

#endif  // HEXWALL_TASK_STACK_HPP_
