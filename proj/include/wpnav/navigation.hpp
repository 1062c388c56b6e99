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


#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wpnav/capabilities.hpp"
#include "wpnav/evaluation.hpp"
#include "wpnav/llm.hpp"
#include "wpnav/planner.hpp"
#include "wpnav/terrain.hpp"

namespace wpnav {

enum class PlannerBackend { AStar, Dijkstra, Llm };

inline const char* to_string(PlannerBackend b) {
  switch (b) {
    case PlannerBackend::AStar: return "astar";
    case PlannerBackend::Dijkstra: return "dijkstra";
    case PlannerBackend::Llm: return "llm";
  }
  return "?";
}

struct PlannerConfig {
  PlannerBackend backend = PlannerBackend::AStar;
  Heuristic heuristic = Heuristic::Octile;
  double cell = 0.5;       // occupancy resolution, meters
  double inflation = 0.5;  // obstacle and wall margin for the search
  bool wall_only = true;   // otherwise tall hurdles and boxes block too
  double min_gap = 0.5;
  double max_gap = 3.0;
  int llm_retries = 2;
  std::string llm_task = LlmRequest{}.task;
};

struct NavigationGoal {
  Pose2 start;
  Vec2 goal;
  double time_limit = 120.0;
  double dwell = 2.0;
  double reach_radius = 0.4;
};

struct NavigationResult {
  std::vector<Waypoint> waypoints;
  std::optional<PlannedPath> path;        // classical backends
  std::optional<LlmTranscript> transcript;  // language-model backend
  EpisodeLog log;
};

/// High-level waypoints from start to goal. Classical backends search an
/// occupancy grid and segment the path; the language-model backend asks for
/// unit indices and maps them to unit centers.
inline std::vector<Waypoint> plan_waypoints(const TerrainGrid& grid, const RobotCapabilities& caps,
                                            const NavigationGoal& nav, const PlannerConfig& cfg,
                                            ChatBackend* chat, NavigationResult* detail = nullptr) {
  if (cfg.backend == PlannerBackend::Llm) {
    if (!chat) throw InvalidArgument("language-model planner needs a chat backend");
    const auto s = grid.unit_at(nav.start.position);
    const auto g = grid.unit_at(nav.goal);
    if (!s || !g) throw PlanError(PlanError::Kind::OutOfBounds, "start or goal outside the grid");
    LlmRequest req;
    req.task = cfg.llm_task;
    req.view = UnitGridView::from(grid);
    req.capabilities_text = describe_capabilities(caps);
    req.start = *s;
    req.goal = *g;
    LlmTranscript t;
    try {
      auto wps = llm_plan(req, *chat, cfg.llm_retries, &t);
      if (detail) detail->transcript = std::move(t);
      return wps;
    } catch (...) {
      if (detail) detail->transcript = std::move(t);
      throw;
    }
  }
  const TerrainGrid inflated = cfg.inflation > 0.0 ? grid.with_inflated_obstacles(cfg.inflation) : grid;
  PlanRequest req{nav.start.position, nav.goal, to_occupancy(inflated, cfg.cell, cfg.wall_only)};
  PlannedPath path = cfg.backend == PlannerBackend::AStar ? plan_astar(req, cfg.heuristic)
                                                          : plan_dijkstra(req);
  auto wps = segment_path_clear(path.world_points, cfg.min_gap, cfg.max_gap, req.map);
  if (detail) detail->path = std::move(path);
  return wps;
}

/// Plans once, then drives a single robot through the waypoints. Success is
/// reaching the last waypoint; a fall or collision ends the episode.
template <LowLevelPolicy Policy>
NavigationResult run_hierarchical(std::shared_ptr<const TerrainGrid> grid, const RobotCapabilities& caps,
                                  const NavigationGoal& nav, const PlannerConfig& cfg,
                                  const Policy& policy, ChatBackend* chat = nullptr) {
  NavigationResult out;
  out.waypoints = plan_waypoints(*grid, caps, nav, cfg, chat, &out);
  TaskSpec task;
  task.kind = TaskKind::Hierarchical;
  task.variant = to_string(cfg.backend);
  task.arena = std::move(grid);
  task.robots = {RobotPlan{nav.start, out.waypoints}};
  task.time_limit = nav.time_limit;
  task.success = {SuccessRule::Kind::AllWaypoints, 0.0};
  task.dwell = nav.dwell;
  task.reach_radius = nav.reach_radius;
  task.reinit_on_failure = false;
  out.log = run_episode(task, 0, policy);
  return out;
}

}  // namespace wpnav
