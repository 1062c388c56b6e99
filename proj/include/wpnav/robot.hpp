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
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "wpnav/capabilities.hpp"
#include "wpnav/errors.hpp"
#include "wpnav/geometry.hpp"
#include "wpnav/reward.hpp"
#include "wpnav/terrain.hpp"
#include "wpnav/waypoint.hpp"

namespace wpnav {

inline constexpr double kControlDt = 0.02;  // 50 Hz

struct RobotState {
  Vec2 position;
  double yaw = 0.0;
  double height = 0.0;  // support height under the base
  Vec2 v;               // world-frame planar velocity
  std::vector<double> q = default_joint_posture();
  double t = 0.0;
  bool alive = true;

  Pose2 pose() const { return {position, yaw}; }
  Vec2 v_base() const { return rotate(v, -yaw); }
};

inline RobotState make_robot(const Pose2& pose, const RewardConfig& cfg = {}) {
  RobotState s;
  s.position = pose.position;
  s.yaw = wrap_angle(pose.yaw);
  s.q = cfg.q_default;
  return s;
}

enum class StepEvent { None, Collision, Fell, ReachedTerminal };

inline const char* to_string(StepEvent e) {
  switch (e) {
    case StepEvent::None: return "none";
    case StepEvent::Collision: return "collision";
    case StepEvent::Fell: return "fell";
    case StepEvent::ReachedTerminal: return "reached";
  }
  return "?";
}

struct StepOutcome {
  RobotState state;
  StepEvent event = StepEvent::None;
};

struct Action {
  Vec2 velocity;  // base frame; the scripted controller only drives forward
  double yaw_rate = 0.0;
};

struct ControllerConfig {
  double k_yaw = 3.0;         // yaw-rate gain, 1/s
  double reach_radius = 0.4;  // speed ramps down inside twice this distance
  double posture_gain = 0.5;  // L1 joint deviation at full speed, rad
};

/// Turn-toward-and-drive law standing in for the learned policy:
/// yaw rate = clamp(k * bearing), forward speed = v_max * max(0, cos bearing),
/// ramped down linearly within 2 * reach_radius of the waypoint.
inline Action controller_step(const WaypointCommand& cmd, const RobotCapabilities& caps,
                              const ControllerConfig& ctrl = {}) {
  if (cmd.distance < 1e-9) return {};
  Action a;
  a.yaw_rate = std::clamp(ctrl.k_yaw * cmd.bearing, -caps.max_yaw_rate, caps.max_yaw_rate);
  const double ramp = std::min(1.0, cmd.distance / (2.0 * ctrl.reach_radius));
  a.velocity = {caps.max_speed * std::max(0.0, std::cos(cmd.bearing)) * ramp, 0.0};
  return a;
}

// Joint vector synthesized from speed: each joint is offset by
// gain * |v| / (v_max * n), so a standing robot holds q_default exactly.
inline std::vector<double> joint_posture(Vec2 v, const RewardConfig& cfg, double max_speed,
                                         double gain) {
  std::vector<double> q = cfg.q_default;
  const double speed = norm(v);
  if (speed == 0.0 || gain == 0.0 || q.empty()) return q;
  const double per_joint = gain * std::min(1.0, speed / max_speed) / static_cast<double>(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) q[i] += (i % 2 == 0) ? per_joint : -per_joint;
  return q;
}

namespace detail {

enum class Contact { Collision, Fell, Blocked, Jump };

struct ContactEvent {
  double t = std::numeric_limits<double>::infinity();  // segment parameter
  Contact kind = Contact::Collision;
  double exit = 0.0;  // meters along the unit direction, for jumps
};

}  // namespace detail

/// Explicit-Euler step with capability gating along the swept segment.
///
/// - obstacle or wall footprint grown by the body radius: Collision
/// - hurdle taller than max_hurdle: Collision (lower ones are stepped over)
/// - box whose top is more than max_climb above the current support: the
///   robot stops at the edge, no event
/// - gap trench: its chord along the motion direction is the jump length;
///   up to max_gap the robot lands past it, beyond that it Fell
/// - leaving the grid: Fell
inline StepOutcome integrate(const RobotState& state, const Action& action, const TerrainGrid& grid,
                             const RobotCapabilities& caps, double dt,
                             const ControllerConfig& ctrl = {}, const RewardConfig& reward = {}) {
  if (!(dt > 0.0)) throw InvalidArgument("dt must be positive");
  if (!state.alive) throw InvalidArgument("cannot step a robot that is no longer alive");
  constexpr double kTol = 1e-9;
  constexpr double kNudge = 1e-6;

  StepOutcome out;
  out.state = state;
  RobotState& s = out.state;

  Vec2 vb = action.velocity;
  const double sp = norm(vb);
  if (sp > caps.max_speed) vb = vb * (caps.max_speed / sp);
  const double yaw_rate = std::clamp(action.yaw_rate, -caps.max_yaw_rate, caps.max_yaw_rate);
  const Vec2 vw = rotate(vb, state.yaw);

  Vec2 cur = state.position;
  Vec2 target = cur + vw * dt;
  double support = state.height;
  bool blocked = false;

  for (int iter = 0; iter < 16; ++iter) {
    const Vec2 d = target - cur;
    const double len = norm(d);
    if (len == 0.0) break;
    const Vec2 u = d / len;
    const Rect span = Rect{{std::min(cur.x, target.x), std::min(cur.y, target.y)},
                           {std::max(cur.x, target.x), std::max(cur.y, target.y)}}
                          .inflated(caps.body_radius);
    detail::ContactEvent ev;
    auto consider = [&](double t, detail::Contact kind, double exit = 0.0) {
      const bool fatal = kind == detail::Contact::Collision || kind == detail::Contact::Fell;
      if (t < ev.t || (t == ev.t && fatal)) ev = {t, kind, exit};
    };
    for (std::size_t k : grid.features_near(span)) {
      const Footprint& f = grid.features()[k];
      switch (f.kind) {
        case FeatureKind::Obstacle:
        case FeatureKind::Wall: {
          const Rect r = f.rect.inflated(caps.body_radius);
          if (r.contains_strict(cur)) {
            consider(0.0, detail::Contact::Collision);
          } else if (auto iv = clip_segment(r, cur, target)) {
            consider(iv->enter, detail::Contact::Collision);
          }
          break;
        }
        case FeatureKind::Hurdle: {
          if (f.height <= caps.max_hurdle + kTol) break;
          if (f.rect.contains(cur)) {
            consider(0.0, detail::Contact::Collision);
          } else if (auto iv = clip_segment(f.rect, cur, target)) {
            consider(iv->enter, detail::Contact::Collision);
          }
          break;
        }
        case FeatureKind::Box: {
          if (f.rect.contains(cur)) break;
          if (f.height - support <= caps.max_climb + kTol) break;
          if (auto iv = clip_segment(f.rect, cur, target)) consider(iv->enter, detail::Contact::Blocked);
          break;
        }
        case FeatureKind::Gap: {
          if (f.rect.contains_strict(cur)) {
            consider(0.0, detail::Contact::Fell);
            break;
          }
          auto iv = clip_segment(f.rect, cur, target);
          if (!iv) break;
          const auto chord = clip_line(f.rect, cur, u, -std::numeric_limits<double>::infinity(),
                                       std::numeric_limits<double>::infinity());
          const double width = chord ? chord->exit - chord->enter : 0.0;
          if (width <= 0.0) break;  // grazing an edge
          if (width > caps.max_gap + kTol) {
            consider(iv->enter, detail::Contact::Fell);
          } else {
            consider(iv->enter, detail::Contact::Jump, chord->exit);
          }
          break;
        }
      }
    }
    if (!std::isfinite(ev.t)) {
      cur = target;
      break;
    }
    if (ev.kind == detail::Contact::Collision || ev.kind == detail::Contact::Fell) {
      cur = cur + d * ev.t;
      out.event = ev.kind == detail::Contact::Collision ? StepEvent::Collision : StepEvent::Fell;
      s.alive = false;
      break;
    }
    if (ev.kind == detail::Contact::Blocked) {
      cur = cur + d * std::max(0.0, ev.t - kNudge / len);
      blocked = true;
      break;
    }
    // Jump: land just past the far side, keep any remaining motion.
    const Vec2 landing = cur + u * (ev.exit + kNudge);
    const bool overshoot = dot(target - cur, u) < ev.exit + kNudge;
    cur = landing;
    if (overshoot) target = landing;
    support = grid.support_height(cur);
  }

  if (s.alive && !grid.contains(cur)) {
    out.event = StepEvent::Fell;
    s.alive = false;
  }
  s.position = cur;
  s.yaw = wrap_angle(state.yaw + yaw_rate * dt);
  s.v = (blocked || !s.alive) ? Vec2{} : vw;
  s.height = grid.support_height(cur);
  s.q = joint_posture(s.v, reward, caps.max_speed, ctrl.posture_gain);
  s.t = state.t + dt;
  return out;
}

/// Scripted low-level policy: controller_step followed by integrate. With no
/// active command the robot holds still.
class ScriptedPolicy {
 public:
  ScriptedPolicy(const TerrainGrid& grid, RobotCapabilities caps = {}, ControllerConfig ctrl = {},
                 RewardConfig reward = {})
      : grid_(&grid), caps_(caps), ctrl_(ctrl), reward_(std::move(reward)) {}

  StepOutcome step(const RobotState& s, const std::optional<WaypointCommand>& cmd, double dt) const {
    const Action a = cmd ? controller_step(*cmd, caps_, ctrl_) : Action{};
    return integrate(s, a, *grid_, caps_, dt, ctrl_, reward_);
  }

  const RobotCapabilities& capabilities() const { return caps_; }
  const TerrainGrid& grid() const { return *grid_; }

 private:
  const TerrainGrid* grid_;
  RobotCapabilities caps_;
  ControllerConfig ctrl_;
  RewardConfig reward_;
};

}  // namespace wpnav
