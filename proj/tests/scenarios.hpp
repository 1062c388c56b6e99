// Copyright 2026 The wpnav Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Small hand-built scenes shared by the robot tests and the acceptance suite.

#pragma once

#include <memory>

#include "wpnav/evaluation.hpp"
#include "wpnav/robot.hpp"
#include "wpnav/terrain.hpp"

namespace scenes {

using namespace wpnav;

// Flat | feature | flat, 2 m units. The robot starts in the first unit facing
// +x and is sent 0.5 m past the feature (onto the box top for boxes).
inline EpisodeLog drive_at_feature(UnitKind kind, double param, const RobotCapabilities& caps = {}) {
  TerrainBuilder b(Scenario::Custom, 1, 3);
  b.place_unit(0, 1, kind, param, 1.0, Axis::X);
  auto grid = std::make_shared<const TerrainGrid>(b.build());
  Vec2 target{3.0, 1.0};
  if (kind == UnitKind::Gap) target.x = 3.0 + param / 2 + 0.5;
  if (kind == UnitKind::Hurdle) target.x = 3.0 + 0.05 + 0.5;

  TaskSpec task;
  task.kind = TaskKind::Hierarchical;
  task.arena = grid;
  task.robots = {RobotPlan{{{1.0, 1.0}, 0.0}, {Waypoint{target, std::nullopt, 0}}}};
  task.time_limit = 10.0;
  task.success = {SuccessRule::Kind::AllWaypoints, 0.0};
  task.dwell = 0.5;
  task.reinit_on_failure = false;
  const ScriptedPolicy policy(*grid, caps);
  return run_episode(task, 0, policy);
}

inline bool traverses(UnitKind kind, double param, const RobotCapabilities& caps = {}) {
  return drive_at_feature(kind, param, caps).outcome == Outcome::Success;
}

}  // namespace scenes
