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


#include <gtest/gtest.h>

#include <cmath>

#include "scenarios.hpp"
#include "wpnav/robot.hpp"

using namespace wpnav;

namespace {

TerrainGrid row_of(UnitKind kind, double param, Axis axis = Axis::X) {
  TerrainBuilder b(Scenario::Custom, 1, 3);
  b.place_unit(0, 1, kind, param, 1.0, axis);
  return b.build();
}

RobotState at(Vec2 p, double yaw = 0.0) { return make_robot({p, yaw}); }

Action forward(double v) { return {{v, 0.0}, 0.0}; }

}  // namespace

TEST(Controller, TurnsThenDrives) {
  const RobotCapabilities caps;
  const Action ahead = controller_step(to_command(Vec2{5.0, 0.0}, {{0, 0}, 0}), caps);
  EXPECT_DOUBLE_EQ(ahead.velocity.x, 1.5);
  EXPECT_DOUBLE_EQ(ahead.yaw_rate, 0.0);
  const Action behind = controller_step(to_command(Vec2{-5.0, 0.0}, {{0, 0}, 0}), caps);
  EXPECT_DOUBLE_EQ(behind.velocity.x, 0.0);
  EXPECT_DOUBLE_EQ(behind.yaw_rate, 2.0);  // clamped
  const Action near = controller_step(to_command(Vec2{0.4, 0.0}, {{0, 0}, 0}), caps);
  EXPECT_DOUBLE_EQ(near.velocity.x, 0.75);  // ramp inside 0.8 m
  const Action here = controller_step(to_command(Vec2{0.0, 0.0}, {{0, 0}, 0}), caps);
  EXPECT_DOUBLE_EQ(here.velocity.x, 0.0);
  EXPECT_DOUBLE_EQ(here.yaw_rate, 0.0);
}

TEST(Posture, DeviationScalesWithSpeed) {
  const RewardConfig cfg;
  const auto still = joint_posture({0, 0}, cfg, 1.5, 0.5);
  EXPECT_EQ(still, cfg.q_default);
  const auto full = joint_posture({1.5, 0}, cfg, 1.5, 0.5);
  double l1 = 0;
  for (std::size_t i = 0; i < full.size(); ++i) l1 += std::abs(full[i] - cfg.q_default[i]);
  EXPECT_NEAR(l1, 0.5, 1e-12);
  const auto half = joint_posture({0, 0.75}, cfg, 1.5, 0.5);
  l1 = 0;
  for (std::size_t i = 0; i < half.size(); ++i) l1 += std::abs(half[i] - cfg.q_default[i]);
  EXPECT_NEAR(l1, 0.25, 1e-12);
}

TEST(Integrate, FlatEuler) {
  const TerrainGrid g = row_of(UnitKind::Flat, 0.0);
  const StepOutcome o = integrate(at({1.0, 1.0}, kPi / 2), {{1.0, 0.0}, 0.5}, g, {}, 0.1);
  EXPECT_EQ(o.event, StepEvent::None);
  EXPECT_NEAR(o.state.position.x, 1.0, 1e-12);
  EXPECT_NEAR(o.state.position.y, 1.1, 1e-12);
  EXPECT_NEAR(o.state.yaw, kPi / 2 + 0.05, 1e-12);
  EXPECT_NEAR(o.state.t, 0.1, 1e-15);
  EXPECT_NEAR(o.state.v.y, 1.0, 1e-12);
  // Commands beyond the limits are clipped.
  const StepOutcome fast = integrate(at({1.0, 1.0}), {{3.0, 0.0}, 9.0}, g, {}, 0.1);
  EXPECT_NEAR(fast.state.position.x, 1.15, 1e-12);
  EXPECT_NEAR(fast.state.yaw, 0.2, 1e-12);
}

TEST(Integrate, Preconditions) {
  const TerrainGrid g = row_of(UnitKind::Flat, 0.0);
  EXPECT_THROW(integrate(at({1, 1}), forward(1), g, {}, 0.0), InvalidArgument);
  RobotState dead = at({1, 1});
  dead.alive = false;
  EXPECT_THROW(integrate(dead, forward(1), g, {}, 0.02), InvalidArgument);
}

TEST(Integrate, WallCollisionStopsAtBodyRadius) {
  TerrainBuilder b(Scenario::Custom, 1, 3);
  b.add_wall(Rect{{3.0, 0.0}, {3.2, 2.0}}, 1.0);
  const TerrainGrid g = b.build();
  const StepOutcome o = integrate(at({2.6, 1.0}), forward(1.5), g, {}, 0.1);
  EXPECT_EQ(o.event, StepEvent::Collision);
  EXPECT_FALSE(o.state.alive);
  EXPECT_NEAR(o.state.position.x, 2.7, 1e-12);
  EXPECT_EQ(o.state.v, (Vec2{0, 0}));
}

TEST(Integrate, HurdleGate) {
  const TerrainGrid low = row_of(UnitKind::Hurdle, 0.3);
  const StepOutcome pass = integrate(at({2.9, 1.0}), forward(1.5), low, {}, 0.1);
  EXPECT_EQ(pass.event, StepEvent::None);
  EXPECT_NEAR(pass.state.position.x, 3.05, 1e-12);
  const TerrainGrid high = row_of(UnitKind::Hurdle, 0.31);
  const StepOutcome hit = integrate(at({2.9, 1.0}), forward(1.5), high, {}, 0.1);
  EXPECT_EQ(hit.event, StepEvent::Collision);
  EXPECT_NEAR(hit.state.position.x, 2.95, 1e-12);
}

TEST(Integrate, BoxBlocksWithoutFailure) {
  const TerrainGrid tall = row_of(UnitKind::Box, 0.36);
  const StepOutcome o = integrate(at({2.45, 1.0}), forward(1.5), tall, {}, 0.1);
  EXPECT_EQ(o.event, StepEvent::None);
  EXPECT_TRUE(o.state.alive);
  EXPECT_NEAR(o.state.position.x, 2.5, 1e-5);
  EXPECT_LT(o.state.position.x, 2.5);
  EXPECT_EQ(o.state.v, (Vec2{0, 0}));
  const TerrainGrid ok = row_of(UnitKind::Box, 0.35);
  const StepOutcome up = integrate(at({2.45, 1.0}), forward(1.5), ok, {}, 0.1);
  EXPECT_NEAR(up.state.position.x, 2.6, 1e-12);
  EXPECT_DOUBLE_EQ(up.state.height, 0.35);
}

TEST(Integrate, GapJumpOrFall) {
  const TerrainGrid narrow = row_of(UnitKind::Gap, 0.35);
  const StepOutcome j = integrate(at({2.8, 1.0}), forward(1.5), narrow, {}, 0.1);
  EXPECT_EQ(j.event, StepEvent::None);
  EXPECT_GT(j.state.position.x, 3.175);  // landed past the far edge
  const TerrainGrid wide = row_of(UnitKind::Gap, 0.36);
  const StepOutcome f = integrate(at({2.8, 1.0}), forward(1.5), wide, {}, 0.1);
  EXPECT_EQ(f.event, StepEvent::Fell);
  EXPECT_FALSE(f.state.alive);
}

TEST(Integrate, ObliqueGapIsWider) {
  // 0.3 m gap crossed at 40 degrees: chord 0.3 / cos(40deg) = 0.39 m > 0.35 m.
  const TerrainGrid g = row_of(UnitKind::Gap, 0.3);
  const double yaw = 40.0 * kPi / 180.0;
  const StepOutcome f = integrate(at({2.8, 0.8}, yaw), forward(1.5), g, {}, 0.1);
  EXPECT_EQ(f.event, StepEvent::Fell);
  const StepOutcome ok = integrate(at({2.8, 0.8}, 0.1), forward(1.5), g, {}, 0.1);
  EXPECT_EQ(ok.event, StepEvent::None);
}

TEST(Integrate, LeavingGridFalls) {
  const TerrainGrid g = row_of(UnitKind::Flat, 0.0);
  const StepOutcome o = integrate(at({0.05, 1.0}, kPi), forward(1.5), g, {}, 0.1);
  EXPECT_EQ(o.event, StepEvent::Fell);
}

TEST(ScriptedPolicy, HoldsStillWithoutCommand) {
  const TerrainGrid g = row_of(UnitKind::Flat, 0.0);
  const ScriptedPolicy p(g);
  const StepOutcome o = p.step(at({1.0, 1.0}, 0.4), std::nullopt, 0.02);
  EXPECT_EQ(o.state.position, (Vec2{1.0, 1.0}));
  EXPECT_DOUBLE_EQ(o.state.yaw, 0.4);
  EXPECT_EQ(o.state.q, default_joint_posture());
}

TEST(Frontier, ScriptedRobotAgainstFeatures) {
  EXPECT_TRUE(scenes::traverses(UnitKind::Gap, 0.30));
  EXPECT_FALSE(scenes::traverses(UnitKind::Gap, 0.45));
  EXPECT_TRUE(scenes::traverses(UnitKind::Box, 0.35));
  EXPECT_FALSE(scenes::traverses(UnitKind::Box, 0.40));
  EXPECT_TRUE(scenes::traverses(UnitKind::Hurdle, 0.30));
  EXPECT_FALSE(scenes::traverses(UnitKind::Hurdle, 0.35));
  EXPECT_EQ(scenes::drive_at_feature(UnitKind::Gap, 0.45).events.front().kind, EventKind::Fell);
  EXPECT_EQ(scenes::drive_at_feature(UnitKind::Hurdle, 0.35).events.front().kind, EventKind::Collision);
  EXPECT_EQ(scenes::drive_at_feature(UnitKind::Box, 0.40).outcome, Outcome::Timeout);
}
