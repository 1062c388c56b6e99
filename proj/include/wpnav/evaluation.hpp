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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <concepts>
#include <cstdio>
#include <istream>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "wpnav/errors.hpp"
#include "wpnav/geometry.hpp"
#include "wpnav/reward.hpp"
#include "wpnav/robot.hpp"
#include "wpnav/terrain.hpp"
#include "wpnav/waypoint.hpp"

namespace wpnav {

template <class P>
concept LowLevelPolicy = requires(const P& p, const RobotState& s,
                                  const std::optional<WaypointCommand>& cmd, double dt) {
  { p.step(s, cmd, dt) } -> std::same_as<StepOutcome>;
};

enum class TaskKind { SingleTraverse, OmniTraverse, Hierarchical };

inline const char* to_string(TaskKind k) {
  switch (k) {
    case TaskKind::SingleTraverse: return "single";
    case TaskKind::OmniTraverse: return "omni";
    case TaskKind::Hierarchical: return "navigate";
  }
  return "?";
}

struct SuccessRule {
  enum class Kind { Radius, FinishLine, AllWaypoints };
  Kind kind = Kind::AllWaypoints;
  double value = 0.0;  // radius from the start, or finish-line x
};

struct RobotPlan {
  Pose2 start;
  std::vector<Waypoint> waypoints;
};

struct TaskSpec {
  TaskKind kind = TaskKind::Hierarchical;
  std::string variant;  // results-table label
  std::shared_ptr<const TerrainGrid> arena;
  std::vector<RobotPlan> robots;
  double time_limit = 30.0;
  double dt = kControlDt;
  SuccessRule success;
  double reach_radius = 0.4;
  double dwell = 0.0;  // stay time before the next waypoint is issued
  bool reinit_on_failure = true;
  bool record_rewards = false;
  RewardConfig reward;
};

enum class EventKind { Collision, Fell, Reinit, Success };

inline const char* to_string(EventKind k) {
  switch (k) {
    case EventKind::Collision: return "collision";
    case EventKind::Fell: return "fell";
    case EventKind::Reinit: return "reinit";
    case EventKind::Success: return "success";
  }
  return "?";
}

struct TrajectorySample {
  double t = 0.0;
  Vec2 position;
  double yaw = 0.0;
  Vec2 v;
  std::optional<EventKind> event;
};

struct EpisodeEvent {
  double t = 0.0;
  EventKind kind = EventKind::Success;
};

enum class Outcome { Success, Timeout, Failed };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Success: return "success";
    case Outcome::Timeout: return "timeout";
    case Outcome::Failed: return "failed";
  }
  return "?";
}

struct EpisodeLog {
  int robot = 0;
  Vec2 origin;
  std::vector<TrajectorySample> trajectory;
  std::vector<EpisodeEvent> events;
  std::vector<Waypoint> waypoints_used;
  Outcome outcome = Outcome::Timeout;
  std::optional<double> success_time;
  std::vector<RewardBreakdown> rewards;  // per control step, when recorded

  double max_distance() const {
    double d = 0.0;
    for (const auto& s : trajectory) d = std::max(d, distance(s.position, origin));
    return d;
  }
};

/// One robot through a task. Every control step appends a sample. A fatal
/// event ends the episode, or with `reinit_on_failure` puts the robot back at
/// its start on the next step with the waypoint stream restarted. After
/// success the robot holds its pose until the time limit.
template <LowLevelPolicy Policy>
EpisodeLog run_episode(const TaskSpec& task, int robot, const Policy& policy) {
  const RobotPlan& plan = task.robots.at(static_cast<std::size_t>(robot));
  EpisodeLog log;
  log.robot = robot;
  log.origin = plan.start.position;
  log.waypoints_used = plan.waypoints;

  WaypointConfig wcfg;
  wcfg.reach_radius = task.reach_radius;
  wcfg.stay_duration = task.dwell;

  RobotState state;
  ProgressState progress;
  WaypointSource source;
  double t_reset = 0.0;
  auto reset = [&](double t) {
    t_reset = t;
    state = make_robot(plan.start, task.reward);
    state.t = t;
    progress = ProgressState::from(wcfg);
    source = sequence_source(plan.waypoints);
    progress.active = source(state.pose());
    progress.terminal = !progress.active;
  };
  reset(0.0);
  log.trajectory.push_back({0.0, state.position, state.yaw, state.v, std::nullopt});

  auto succeeded_now = [&]() {
    switch (task.success.kind) {
      case SuccessRule::Kind::Radius: return distance(state.position, log.origin) > task.success.value;
      case SuccessRule::Kind::FinishLine: return state.position.x > task.success.value;
      case SuccessRule::Kind::AllWaypoints: return progress.terminal;
    }
    return false;
  };

  const long steps = std::lround(task.time_limit / task.dt);
  bool done = false;
  bool pending_reinit = false;
  for (long k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k) * task.dt;
    if (done) {
      log.trajectory.push_back({t, state.position, state.yaw, {}, std::nullopt});
      continue;
    }
    if (pending_reinit) {
      reset(t);
      pending_reinit = false;
      log.events.push_back({t, EventKind::Reinit});
      log.trajectory.push_back({t, state.position, state.yaw, state.v, EventKind::Reinit});
      continue;
    }
    std::optional<WaypointCommand> cmd;
    if (progress.active && !progress.terminal) cmd = to_command(*progress.active, state.pose());
    StepOutcome out = policy.step(state, cmd, task.dt);
    state = out.state;
    state.t = t;

    if (task.record_rewards) {
      RewardInputs in;
      in.n_p = progress.reached_count;
      in.t = t - t_reset;
      in.q = state.q;
      in.v_base = state.v_base();
      in.yaw = state.yaw;
      if (progress.active) {
        const WaypointCommand c = to_command(*progress.active, state.pose());
        in.w_rel = c.w_rel;
        in.waypoint_bearing = state.yaw + c.bearing;
      }
      log.rewards.push_back(compose(in, task.reward, Phase::Finetune));
    }

    if (!state.alive) {
      const EventKind ek = out.event == StepEvent::Collision ? EventKind::Collision : EventKind::Fell;
      log.events.push_back({t, ek});
      log.trajectory.push_back({t, state.position, state.yaw, state.v, ek});
      if (!task.reinit_on_failure) {
        log.outcome = Outcome::Failed;
        return log;
      }
      pending_reinit = true;
      continue;
    }
    progress = update_progress(std::move(progress), state.pose(), task.dt, source).state;
    std::optional<EventKind> ev;
    if (succeeded_now()) {
      done = true;
      log.success_time = t;
      log.events.push_back({t, EventKind::Success});
      ev = EventKind::Success;
      state.v = {};
      if (task.kind == TaskKind::Hierarchical) {
        log.trajectory.push_back({t, state.position, state.yaw, state.v, ev});
        break;
      }
    }
    log.trajectory.push_back({t, state.position, state.yaw, state.v, ev});
  }
  if (log.success_time) {
    log.outcome = Outcome::Success;
  } else {
    const bool failed = std::any_of(log.events.begin(), log.events.end(), [](const EpisodeEvent& e) {
      return e.kind == EventKind::Collision || e.kind == EventKind::Fell;
    });
    log.outcome = failed ? Outcome::Failed : Outcome::Timeout;
  }
  return log;
}

/// Runs every robot of `task`, fanning out over `workers` threads. Logs come
/// back in robot order whatever the completion order.
template <LowLevelPolicy Policy>
std::vector<EpisodeLog> run_task(const TaskSpec& task, const Policy& policy, int workers = 1) {
  const int n = static_cast<int>(task.robots.size());
  std::vector<EpisodeLog> logs(static_cast<std::size_t>(n));
  workers = std::clamp(workers, 1, std::max(1, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) logs[static_cast<std::size_t>(i)] = run_episode(task, i, policy);
    return logs;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int i = next++; i < n; i = next++) {
          logs[static_cast<std::size_t>(i)] = run_episode(task, i, policy);
        }
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return logs;
}

struct Metrics {
  int robots = 0;
  int successes = 0;
  double sr = 0.0;
  double atd = 0.0;
  std::optional<double> ast;  // undefined when nobody succeeded
};

/// SR = successes / robots; ATD = mean farthest distance from each robot's
/// origin; AST = mean success time with non-successes counted at the time
/// limit, defined only when SR > 0.
inline Metrics compute_metrics(std::span<const EpisodeLog> logs, double time_limit) {
  Metrics m;
  m.robots = static_cast<int>(logs.size());
  if (logs.empty()) return m;
  double dist = 0.0;
  double time = 0.0;
  for (const auto& log : logs) {
    dist += log.max_distance();
    if (log.outcome == Outcome::Success && log.success_time) {
      ++m.successes;
      time += *log.success_time;
    } else {
      time += time_limit;
    }
  }
  m.sr = static_cast<double>(m.successes) / m.robots;
  m.atd = dist / m.robots;
  if (m.successes > 0) m.ast = time / m.robots;
  return m;
}

inline std::string format_ast(const std::optional<double>& ast) {
  if (!ast) return "/";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", *ast);
  return buf;
}

inline void write_results_header(std::ostream& os) { os << "task,variant,SR,ATD_m,AST_s\n"; }

inline void write_results_row(std::ostream& os, const std::string& task, const std::string& variant,
                              const Metrics& m) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%.2f,%.1f,", m.sr, m.atd);
  os << task << ',' << variant << ',' << buf << format_ast(m.ast) << '\n';
}

struct Heatmap {
  int rows = 0;
  int cols = 0;
  double cell = 0.25;
  Vec2 origin;
  std::vector<long> counts;

  long at(int r, int c) const { return counts[static_cast<std::size_t>(r) * cols + c]; }
  long total() const {
    long t = 0;
    for (long v : counts) t += v;
    return t;
  }
};

/// Visit counts over `bounds`. Every trajectory sample lands in exactly one
/// cell; samples outside the bounds go to the nearest border cell so the total
/// always equals the sample count.
inline Heatmap accumulate_heatmap(std::span<const EpisodeLog> logs, double cell, const Rect& bounds) {
  if (!(cell > 0.0)) throw InvalidArgument("heatmap cell must be positive");
  Heatmap h;
  h.cell = cell;
  h.origin = bounds.lo;
  h.rows = std::max(1, static_cast<int>(std::ceil((bounds.hi.y - bounds.lo.y) / cell - 1e-9)));
  h.cols = std::max(1, static_cast<int>(std::ceil((bounds.hi.x - bounds.lo.x) / cell - 1e-9)));
  h.counts.assign(static_cast<std::size_t>(h.rows) * h.cols, 0);
  for (const auto& log : logs) {
    for (const auto& s : log.trajectory) {
      const int c = std::clamp(static_cast<int>(std::floor((s.position.x - h.origin.x) / cell)), 0, h.cols - 1);
      const int r = std::clamp(static_cast<int>(std::floor((s.position.y - h.origin.y) / cell)), 0, h.rows - 1);
      ++h.counts[static_cast<std::size_t>(r) * h.cols + c];
    }
  }
  return h;
}

// Bounds from the samples themselves, snapped outward to the cell grid.
inline Heatmap accumulate_heatmap(std::span<const EpisodeLog> logs, double cell) {
  if (!(cell > 0.0)) throw InvalidArgument("heatmap cell must be positive");
  Rect b{{0, 0}, {cell, cell}};
  bool first = true;
  for (const auto& log : logs) {
    for (const auto& s : log.trajectory) {
      if (first) {
        b = {s.position, s.position};
        first = false;
      }
      b.lo = {std::min(b.lo.x, s.position.x), std::min(b.lo.y, s.position.y)};
      b.hi = {std::max(b.hi.x, s.position.x), std::max(b.hi.y, s.position.y)};
    }
  }
  b.lo = {std::floor(b.lo.x / cell) * cell, std::floor(b.lo.y / cell) * cell};
  b.hi = {(std::floor(b.hi.x / cell) + 1) * cell, (std::floor(b.hi.y / cell) + 1) * cell};
  return accumulate_heatmap(logs, cell, b);
}

inline void write_heatmap_text(std::ostream& os, const Heatmap& h) {
  os << "heatmap " << h.rows << ' ' << h.cols << ' ' << h.cell << ' ' << h.origin.x << ' '
     << h.origin.y << ' ' << h.total() << '\n';
  for (int r = 0; r < h.rows; ++r) {
    for (int c = 0; c < h.cols; ++c) os << (c ? " " : "") << h.at(r, c);
    os << '\n';
  }
}

// Binary PGM, darker = more visits, scaled to the busiest cell. The top image
// row is the highest y.
inline void write_heatmap_pgm(std::ostream& os, const Heatmap& h) {
  long peak = 0;
  for (long v : h.counts) peak = std::max(peak, v);
  os << "P5\n" << h.cols << ' ' << h.rows << "\n255\n";
  for (int r = h.rows - 1; r >= 0; --r) {
    for (int c = 0; c < h.cols; ++c) {
      const double frac = peak > 0 ? static_cast<double>(h.at(r, c)) / peak : 0.0;
      os.put(static_cast<char>(static_cast<unsigned char>(255 - std::lround(255.0 * frac))));
    }
  }
}

// Per-robot trajectory CSV: t,x,y,yaw,vx,vy,event.
inline void write_episode_csv(std::ostream& os, const EpisodeLog& log) {
  os << "t,x,y,yaw,vx,vy,event\n";
  char buf[256];
  for (const auto& s : log.trajectory) {
    std::snprintf(buf, sizeof buf, "%.4f,%.9g,%.9g,%.9g,%.9g,%.9g,%s\n", s.t, s.position.x,
                  s.position.y, s.yaw, s.v.x, s.v.y, s.event ? to_string(*s.event) : "none");
    os << buf;
  }
}

inline EpisodeLog read_episode_csv(std::istream& is, int robot = 0) {
  EpisodeLog log;
  log.robot = robot;
  std::string line;
  if (!std::getline(is, line) || line.rfind("t,x,y,yaw,vx,vy,event", 0) != 0) {
    throw ParseError("episode log: missing header");
  }
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    TrajectorySample s;
    std::string ev;
    if (!(ls >> s.t >> s.position.x >> s.position.y >> s.yaw >> s.v.x >> s.v.y >> ev)) {
      throw ParseError("episode log: malformed line " + std::to_string(lineno));
    }
    for (auto k : {EventKind::Collision, EventKind::Fell, EventKind::Reinit, EventKind::Success}) {
      if (ev == to_string(k)) s.event = k;
    }
    if (!s.event && ev != "none") throw ParseError("episode log: unknown event '" + ev + "'");
    if (s.event) log.events.push_back({s.t, *s.event});
    log.trajectory.push_back(s);
  }
  if (log.trajectory.empty()) throw ParseError("episode log: no samples");
  log.origin = log.trajectory.front().position;
  bool failed = false;
  for (const auto& e : log.events) {
    if (e.kind == EventKind::Success && !log.success_time) log.success_time = e.t;
    failed = failed || e.kind == EventKind::Collision || e.kind == EventKind::Fell;
  }
  log.outcome = log.success_time ? Outcome::Success : failed ? Outcome::Failed : Outcome::Timeout;
  return log;
}

// ---------------------------------------------------------------------------
// Task construction.

struct SingleTraverseOptions {
  int robots = 18;
  double time_limit = 30.0;
  bool with_obstacles = false;
  std::uint64_t seed = 0;
  double dwell = 0.0;
  double reach_radius = 0.4;
  TerrainOptions terrain;
};

inline std::vector<UnitKind> single_course(bool with_obstacles) {
  using K = UnitKind;
  if (with_obstacles) return {K::Flat, K::Hurdle, K::Obstacle, K::Box, K::Gap, K::Obstacle, K::Hurdle, K::Box};
  return {K::Flat, K::Hurdle, K::Box, K::Gap, K::Flat, K::Hurdle, K::Box, K::Gap};
}

/// Parallel straight tracks, one per robot, at the hardest random-waypoint
/// curriculum parameters, plus a flat run-out unit. Success means crossing the
/// far edge of the last course unit within the time limit.
inline TaskSpec make_single_traverse(const SingleTraverseOptions& opt) {
  const auto course = single_course(opt.with_obstacles);
  const int len = static_cast<int>(course.size());
  TerrainBuilder b(Scenario::WPFixed, opt.robots, len + 1, opt.terrain);
  Rng rng(opt.seed);
  for (int r = 0; r < opt.robots; ++r) {
    for (int c = 0; c <= len; ++c) {
      const UnitKind kind = c < len ? course[static_cast<std::size_t>(c)] : UnitKind::Flat;
      b.place_unit(r, c, kind, unit_param(kind, Scenario::WPRandom, 1.0), 1.0, Axis::X, &rng);
    }
  }
  TaskSpec t;
  t.kind = TaskKind::SingleTraverse;
  t.variant = opt.with_obstacles ? "with obst." : "w/o obst.";
  t.arena = std::make_shared<const TerrainGrid>(b.build());
  t.time_limit = opt.time_limit;
  t.success = {SuccessRule::Kind::FinishLine, len * opt.terrain.unit_size};
  t.dwell = opt.dwell;
  t.reach_radius = opt.reach_radius;
  const double s = opt.terrain.unit_size;
  for (int r = 0; r < opt.robots; ++r) {
    RobotPlan p;
    p.start = {{std::min(0.5, s / 4), (r + 0.5) * s}, 0.0};
    p.waypoints = track_waypoints(*t.arena, r, 0, len + 1, 0.5);
    t.robots.push_back(std::move(p));
  }
  return t;
}

enum class OmniArena { Flat, Terrain };

struct OmniTraverseOptions {
  int robots = 18;
  double time_limit = 16.0;
  double success_distance = 8.5;
  double arena_size = 21.0;
  int arena_units = 7;  // per side; odd so the robots start in a unit center
  OmniArena arena = OmniArena::Terrain;
  bool with_obstacles = false;
  std::uint64_t seed = 0;
  double waypoint_spacing = 2.0;
  double dwell = 0.0;
  double reach_radius = 0.4;
  double resolution = 0.05;
};

inline std::shared_ptr<const TerrainGrid> make_omni_arena(const OmniTraverseOptions& opt) {
  TerrainOptions to;
  to.unit_size = opt.arena_size / opt.arena_units;
  to.resolution = opt.resolution;
  TerrainBuilder b(Scenario::WPRandom, opt.arena_units, opt.arena_units, to);
  Rng rng(opt.seed);
  const int mid = opt.arena_units / 2;
  std::vector<UnitKind> pool = {UnitKind::Flat, UnitKind::Hurdle, UnitKind::Box, UnitKind::Gap};
  if (opt.with_obstacles) pool.push_back(UnitKind::Obstacle);
  for (int r = 0; r < opt.arena_units; ++r) {
    for (int c = 0; c < opt.arena_units; ++c) {
      UnitKind kind = UnitKind::Flat;
      const Axis axis = rng.coin() ? Axis::X : Axis::Y;
      if (opt.arena == OmniArena::Terrain && !(r == mid && c == mid)) kind = pool[rng.below(pool.size())];
      b.place_unit(r, c, kind, unit_param(kind, Scenario::WPRandom, 1.0), 1.0, axis, &rng);
    }
  }
  return std::make_shared<const TerrainGrid>(b.build());
}

// Robots at the arena center with yaws evenly spaced over the full turn,
// each fed waypoints every `spacing` meters along its own heading.
inline TaskSpec make_omni_task(std::shared_ptr<const TerrainGrid> arena, const OmniTraverseOptions& opt) {
  TaskSpec t;
  t.kind = TaskKind::OmniTraverse;
  t.variant = opt.with_obstacles ? "with obst." : "w/o obst.";
  t.time_limit = opt.time_limit;
  t.success = {SuccessRule::Kind::Radius, opt.success_distance};
  t.dwell = opt.dwell;
  t.reach_radius = opt.reach_radius;
  const Rect bounds = arena->bounds();
  const Vec2 center = bounds.center();
  const Rect inner = bounds.inflated(-0.25);
  for (int i = 0; i < opt.robots; ++i) {
    const double yaw = wrap_angle(2.0 * kPi * i / opt.robots);
    RobotPlan p;
    p.start = {center, yaw};
    const Vec2 dir{std::cos(yaw), std::sin(yaw)};
    for (int k = 1;; ++k) {
      const Vec2 w = center + dir * (opt.waypoint_spacing * k);
      if (!inner.contains(w)) break;
      p.waypoints.push_back({w, std::nullopt, k - 1});
    }
    t.robots.push_back(std::move(p));
  }
  t.arena = std::move(arena);
  return t;
}

inline TaskSpec make_omni_traverse(const OmniTraverseOptions& opt) {
  return make_omni_task(make_omni_arena(opt), opt);
}

}  // namespace wpnav
