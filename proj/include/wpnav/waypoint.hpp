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

#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "wpnav/errors.hpp"
#include "wpnav/geometry.hpp"
#include "wpnav/rng.hpp"
#include "wpnav/terrain.hpp"

namespace wpnav {

struct Waypoint {
  Vec2 position;
  std::optional<std::pair<int, int>> unit_index;  // (row, col) when placed at a unit center
  int id = 0;
};

// Active waypoint in the robot base frame.
struct WaypointCommand {
  Vec2 w_rel;
  double distance = 0.0;
  double bearing = 0.0;  // counter-clockwise from the heading, in (-pi, pi]
};

inline WaypointCommand to_command(Vec2 target, const Pose2& pose) {
  WaypointCommand cmd;
  cmd.w_rel = rotate(target - pose.position, -pose.yaw);
  cmd.distance = norm(cmd.w_rel);
  cmd.bearing = cmd.distance > 0.0 ? std::atan2(cmd.w_rel.y, cmd.w_rel.x) : 0.0;
  if (cmd.bearing == -kPi) cmd.bearing = kPi;
  return cmd;
}

inline WaypointCommand to_command(const Waypoint& w, const Pose2& pose) {
  return to_command(w.position, pose);
}

struct WaypointConfig {
  double reach_radius = 0.4;   // d_t
  double stay_duration = 2.0;  // dwell before the target shifts
  double preset_offset = 0.5;  // distance past a feature's far edge
  int sampler_budget = 256;
};

/// Waypoints along unit row `row` from `col_begin` to `col_end` (exclusive),
/// ordered along +x. Flat and box units get the unit center; hurdle, gap and
/// obstacle units get a point on the row axis `offset` past the feature's far
/// edge, kept inside the unit.
inline std::vector<Waypoint> track_waypoints(const TerrainGrid& grid, int row, int col_begin,
                                             int col_end, double offset) {
  std::vector<Waypoint> track;
  for (int col = col_begin; col < col_end; ++col) {
    const TerrainUnitSpec& spec = grid.unit(row, col);
    const Rect ur = spec.rect();
    Waypoint w;
    w.position = spec.center();
    w.id = col - col_begin;
    if (spec.kind == UnitKind::Flat || spec.kind == UnitKind::Box) {
      w.unit_index = std::pair{row, col};
    } else {
      double far = w.position.x;
      for (std::size_t k : grid.features_near(ur)) {
        const Footprint& f = grid.features()[k];
        if (ur.contains(f.rect)) far = std::max(far, f.rect.hi.x);
      }
      const double margin = std::min(0.05, spec.extent.x / 4);
      w.position.x = std::min(far + offset, ur.hi.x - margin);
    }
    track.push_back(w);
  }
  return track;
}

/// Preset waypoints for every track of a fixed-waypoint grid, tracks in
/// row-major order.
inline std::vector<std::vector<Waypoint>> preset_fixed_waypoints(const TerrainGrid& grid,
                                                                 const WaypointConfig& cfg = {}) {
  if (grid.scenario() != Scenario::WPFixed) {
    throw InvalidArgument("preset waypoints need a fixed-waypoint grid");
  }
  const int tracks_per_row = grid.unit_cols() / kTrackUnits;
  std::vector<std::vector<Waypoint>> out;
  for (int tr = 0; tr < grid.unit_rows(); ++tr) {
    for (int tc = 0; tc < tracks_per_row; ++tc) {
      out.push_back(track_waypoints(grid, tr, tc * kTrackUnits, (tc + 1) * kTrackUnits, cfg.preset_offset));
    }
  }
  return out;
}

struct SamplerConfig {
  double max_distance = 2.0;
  double max_bearing = kPi / 2;
  double min_distance = 0.4;  // closer candidates would already count as reached

  static SamplerConfig for_grid(const TerrainGrid& grid) {
    SamplerConfig c;
    c.max_distance = grid.unit_size();
    return c;
  }
};

// True when a robot at `from` may be sent to `p`: inside the grid, clear of
// (virtual) obstacles, hurdles and gap trenches, and with no obstacle on the
// straight line.
inline bool waypoint_accessible(const TerrainGrid& grid, Vec2 from, Vec2 p) {
  if (!grid.contains(p)) return false;
  const Rect span{{std::min(from.x, p.x), std::min(from.y, p.y)},
                  {std::max(from.x, p.x), std::max(from.y, p.y)}};
  for (std::size_t k : grid.virtual_near(span)) {
    const Rect& r = grid.virtual_obstacles()[k].rect;
    if (r.contains(p) || clip_segment(r, from, p)) return false;
  }
  for (std::size_t k : grid.features_near({p, p})) {
    const Footprint& f = grid.features()[k];
    if ((f.kind == FeatureKind::Gap || f.kind == FeatureKind::Hurdle) && f.rect.contains(p)) {
      return false;
    }
  }
  return true;
}

/// Rejection-samples a waypoint within `max_distance` of the robot and
/// `max_bearing` of its heading. Throws NoCandidate once `budget` draws fail.
inline Waypoint sample_random_waypoint(const TerrainGrid& grid, const Pose2& pose,
                                       const SamplerConfig& cfg, Rng& rng, int budget = 256) {
  if (!(cfg.max_bearing >= 0.0 && cfg.max_bearing <= kPi / 2 + 1e-12)) {
    throw InvalidArgument("max bearing must lie in [0, pi/2]");
  }
  if (!(cfg.max_distance > 0.0) || cfg.min_distance > cfg.max_distance) {
    throw InvalidArgument("invalid waypoint distance bounds");
  }
  const double lo = std::max(0.0, cfg.min_distance);
  for (int i = 0; i < budget; ++i) {
    const double d = rng.uniform(lo, cfg.max_distance);
    const double b = cfg.max_bearing > 0.0 ? rng.uniform(-cfg.max_bearing, cfg.max_bearing) : 0.0;
    const double heading = pose.yaw + b;
    const Vec2 p = pose.position + Vec2{d * std::cos(heading), d * std::sin(heading)};
    // Re-check in the command frame so rounding can never leak a violation.
    const WaypointCommand cmd = to_command(p, pose);
    if (cmd.distance > cfg.max_distance || std::abs(cmd.bearing) > cfg.max_bearing) continue;
    if (!waypoint_accessible(grid, pose.position, p)) continue;
    Waypoint w;
    w.position = p;
    return w;
  }
  throw NoCandidate("no accessible waypoint within " + std::to_string(cfg.max_distance) +
                    " m and " + std::to_string(cfg.max_bearing) + " rad after " +
                    std::to_string(budget) + " draws");
}

struct ProgressState {
  int active_index = 0;
  double time_at_waypoint = 0.0;
  int reached_count = 0;  // n_p
  double reach_radius = 0.4;
  double stay_duration = 2.0;
  std::optional<Waypoint> active;
  bool terminal = false;  // every waypoint reached

  static ProgressState from(const WaypointConfig& cfg) {
    ProgressState s;
    s.reach_radius = cfg.reach_radius;
    s.stay_duration = cfg.stay_duration;
    return s;
  }
};

struct ProgressUpdate {
  ProgressState state;
  std::optional<WaypointCommand> new_command;  // set when a new target became active
};

// Supplies the next waypoint given the robot pose, or nullopt when exhausted.
using WaypointSource = std::function<std::optional<Waypoint>(const Pose2&)>;

/// Advances dwell bookkeeping by `dt`. Time inside the reach radius
/// accumulates; leaving it resets the dwell clock. Once the dwell reaches
/// `stay_duration` the waypoint counts as reached and the next one is pulled
/// from `next`; an exhausted source makes the state terminal. A waypoint that
/// is passed through without dwelling does not advance.
inline ProgressUpdate update_progress(ProgressState state, const Pose2& pose, double dt,
                                      const WaypointSource& next) {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  ProgressUpdate out;
  if (state.terminal) {
    out.state = std::move(state);
    return out;
  }
  if (!state.active) {
    state.active = next(pose);
    if (!state.active) {
      state.terminal = true;
      out.state = std::move(state);
      return out;
    }
    out.new_command = to_command(*state.active, pose);
  }
  const bool inside = distance(pose.position, state.active->position) < state.reach_radius;
  state.time_at_waypoint = inside ? state.time_at_waypoint + dt : 0.0;
  // Dwell is a sum of dt steps; allow for its rounding.
  if (inside && state.time_at_waypoint >= state.stay_duration - 1e-9) {
    ++state.reached_count;
    state.time_at_waypoint = 0.0;
    auto w = next(pose);
    if (w) {
      ++state.active_index;
      state.active = std::move(w);
      out.new_command = to_command(*state.active, pose);
    } else {
      state.terminal = true;
    }
  }
  out.state = std::move(state);
  return out;
}

// Source that walks a fixed list.
inline WaypointSource sequence_source(std::vector<Waypoint> waypoints) {
  return [w = std::move(waypoints), i = std::size_t{0}](const Pose2&) mutable
             -> std::optional<Waypoint> {
    if (i >= w.size()) return std::nullopt;
    return w[i++];
  };
}

// Waypoint list file: one `x y [row col]` per line, world frame, meters.
inline void write_waypoints(std::ostream& os, const std::vector<Waypoint>& wps) {
  char buf[96];
  for (const auto& w : wps) {
    std::snprintf(buf, sizeof buf, "%.6f %.6f", w.position.x, w.position.y);
    os << buf;
    if (w.unit_index) os << ' ' << w.unit_index->first << ' ' << w.unit_index->second;
    os << '\n';
  }
}

inline std::vector<Waypoint> read_waypoints(std::istream& is) {
  std::vector<Waypoint> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
    std::istringstream ls(line);
    Waypoint w;
    if (!(ls >> w.position.x >> w.position.y)) {
      throw ParseError("waypoints line " + std::to_string(lineno) + ": expected 'x y [row col]'");
    }
    int r = 0;
    int c = 0;
    if (ls >> r) {
      if (!(ls >> c)) throw ParseError("waypoints line " + std::to_string(lineno) + ": row without col");
      w.unit_index = std::pair{r, c};
    }
    w.id = static_cast<int>(out.size());
    out.push_back(w);
  }
  return out;
}

}  // namespace wpnav
