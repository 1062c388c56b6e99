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
#include <sstream>
#include <vector>

#include "wpnav/waypoint.hpp"

using namespace wpnav;

namespace {

TerrainGrid flat_grid(int rows, int cols) {
  TerrainBuilder b(Scenario::Custom, rows, cols);
  return b.build();
}

WaypointSource fixed(std::vector<Vec2> pts) {
  std::vector<Waypoint> w;
  for (std::size_t i = 0; i < pts.size(); ++i) w.push_back({pts[i], std::nullopt, static_cast<int>(i)});
  return sequence_source(std::move(w));
}

}  // namespace

TEST(Command, BaseFrameConversion) {
  const WaypointCommand c = to_command(Vec2{1.0, 2.0}, Pose2{{1.0, 0.0}, kPi / 2});
  EXPECT_NEAR(c.w_rel.x, 2.0, 1e-12);
  EXPECT_NEAR(c.w_rel.y, 0.0, 1e-12);
  EXPECT_NEAR(c.distance, 2.0, 1e-12);
  EXPECT_NEAR(c.bearing, 0.0, 1e-12);
  const WaypointCommand behind = to_command(Vec2{-1.0, 0.0}, Pose2{{0.0, 0.0}, 0.0});
  EXPECT_DOUBLE_EQ(behind.bearing, kPi);
  const WaypointCommand here = to_command(Vec2{3.0, 3.0}, Pose2{{3.0, 3.0}, 1.0});
  EXPECT_DOUBLE_EQ(here.distance, 0.0);
  EXPECT_DOUBLE_EQ(here.bearing, 0.0);
}

TEST(Preset, HurdleTrackPointsPastFeatures) {
  const std::vector<UnitKind> kinds = {UnitKind::Hurdle};
  const TerrainGrid g = generate_wp_fixed(1, 1, kinds, std::vector<double>{0.5}, 1);
  const auto tracks = preset_fixed_waypoints(g);
  ASSERT_EQ(tracks.size(), 1u);
  ASSERT_EQ(tracks[0].size(), 6u);
  for (int u = 0; u < 6; ++u) {
    const Waypoint& w = tracks[0][static_cast<std::size_t>(u)];
    // Hurdle bar far edge at center + 0.05, plus the 0.5 m offset.
    EXPECT_NEAR(w.position.x, u * 2.0 + 1.0 + 0.05 + 0.5, 1e-12);
    EXPECT_NEAR(w.position.y, 1.0, 1e-12);
    EXPECT_FALSE(w.unit_index);
  }
}

TEST(Preset, BoxTrackUsesUnitCenters) {
  const std::vector<UnitKind> kinds = {UnitKind::Box, UnitKind::Gap};
  const TerrainGrid g = generate_wp_fixed(1, 2, kinds, std::vector<double>{1.0}, 1);
  const auto tracks = preset_fixed_waypoints(g);
  ASSERT_EQ(tracks.size(), 2u);
  EXPECT_EQ(tracks[0][2].position, (Vec2{5.0, 1.0}));
  EXPECT_EQ(tracks[0][2].unit_index, (std::pair{0, 2}));
  // Gap 0.9 m wide: far edge at center + 0.45, then +0.5, capped at unit end - 0.05.
  EXPECT_NEAR(tracks[1][0].position.x, 12.0 + 1.0 + 0.45 + 0.5, 1e-12);
  EXPECT_THROW(preset_fixed_waypoints(flat_grid(1, 6)), InvalidArgument);
}

TEST(Sampler, RespectsDistanceAndBearing) {
  const TerrainGrid g = flat_grid(5, 5);
  const SamplerConfig cfg = SamplerConfig::for_grid(g);
  Rng rng(12);
  for (int i = 0; i < 2000; ++i) {
    const Pose2 pose{{5.0, 5.0}, rng.uniform(-kPi, kPi)};
    const Waypoint w = sample_random_waypoint(g, pose, cfg, rng);
    const WaypointCommand c = to_command(w, pose);
    ASSERT_LE(c.distance, 2.0);
    ASSERT_GE(c.distance, 0.4 - 1e-12);
    ASSERT_LE(std::abs(c.bearing), kPi / 2);
  }
}

TEST(Sampler, AvoidsVirtualObstacles) {
  TerrainBuilder b(Scenario::Custom, 1, 2);
  b.add_wall(Rect{{2.2, 0.0}, {2.4, 2.0}}, 1.0);
  const TerrainGrid g = b.build();
  Rng rng(5);
  const Pose2 pose{{1.5, 1.0}, 0.0};
  for (int i = 0; i < 500; ++i) {
    const Waypoint w = sample_random_waypoint(g, pose, SamplerConfig{}, rng);
    EXPECT_LT(w.position.x, 2.2);  // nothing behind the wall
  }
  EXPECT_FALSE(waypoint_accessible(g, pose.position, {2.3, 1.0}));
  EXPECT_FALSE(waypoint_accessible(g, pose.position, {3.0, 1.0}));
  EXPECT_TRUE(waypoint_accessible(g, pose.position, {2.0, 1.5}));
  EXPECT_FALSE(waypoint_accessible(g, pose.position, {-0.1, 1.0}));
}

TEST(Sampler, NoCandidateWhenBoxedIn) {
  TerrainBuilder b(Scenario::Custom, 1, 1);
  b.add_wall(Rect{{0.6, 0.0}, {0.7, 2.0}}, 1.0);
  const TerrainGrid g = b.build();
  Rng rng(1);
  SamplerConfig cfg;
  cfg.max_bearing = 0.3;
  EXPECT_THROW(sample_random_waypoint(g, {{0.3, 1.0}, 0.0}, cfg, rng, 64), NoCandidate);
  cfg.max_bearing = 2.0;
  EXPECT_THROW(sample_random_waypoint(g, {{0.3, 1.0}, 0.0}, cfg, rng), InvalidArgument);
}

TEST(Progress, DwellAdvancesAfterStayDuration) {
  WaypointConfig cfg;  // 0.4 m radius, 2 s stay
  ProgressState st = ProgressState::from(cfg);
  auto src = fixed({{1.0, 0.0}, {3.0, 0.0}});
  const Pose2 at{{1.1, 0.0}, 0.0};
  auto up = update_progress(st, at, 0.02, src);
  ASSERT_TRUE(up.new_command);  // first waypoint activated
  st = up.state;
  int steps = 1;
  while (st.active_index == 0) {
    st = update_progress(st, at, 0.02, src).state;
    ++steps;
    ASSERT_LT(steps, 1000);
  }
  EXPECT_EQ(steps, 100);  // 100 x 0.02 s = 2 s
  EXPECT_EQ(st.reached_count, 1);
  EXPECT_EQ(st.active->position, (Vec2{3.0, 0.0}));
}

TEST(Progress, LeavingResetsDwellAndOvershootDoesNotAdvance) {
  WaypointConfig cfg;
  ProgressState st = ProgressState::from(cfg);
  auto src = fixed({{1.0, 0.0}});
  for (int i = 0; i < 60; ++i) st = update_progress(st, {{1.0, 0.1}, 0.0}, 0.02, src).state;
  EXPECT_NEAR(st.time_at_waypoint, 1.2, 1e-9);
  st = update_progress(st, {{2.0, 0.0}, 0.0}, 0.02, src).state;
  EXPECT_DOUBLE_EQ(st.time_at_waypoint, 0.0);
  EXPECT_EQ(st.reached_count, 0);
  EXPECT_FALSE(st.terminal);
}

TEST(Progress, ZeroDwellAdvancesOnlyInside) {
  WaypointConfig cfg;
  cfg.stay_duration = 0.0;
  ProgressState st = ProgressState::from(cfg);
  auto src = fixed({{1.0, 0.0}, {2.0, 0.0}});
  st = update_progress(st, {{0.0, 0.0}, 0.0}, 0.02, src).state;
  EXPECT_EQ(st.active_index, 0);
  st = update_progress(st, {{0.7, 0.0}, 0.0}, 0.02, src).state;
  EXPECT_EQ(st.active_index, 1);
  st = update_progress(st, {{1.7, 0.0}, 0.0}, 0.02, src).state;
  EXPECT_TRUE(st.terminal);
  EXPECT_EQ(st.reached_count, 2);
}

TEST(Progress, ExhaustedSourceIsTerminal) {
  ProgressState st = ProgressState::from({});
  auto src = fixed({});
  const auto up = update_progress(st, {{0, 0}, 0}, 0.02, src);
  EXPECT_TRUE(up.state.terminal);
  EXPECT_FALSE(up.state.active);
  EXPECT_THROW(update_progress(st, {{0, 0}, 0}, 0.0, src), InvalidArgument);
}

TEST(WaypointFile, RoundTrip) {
  std::vector<Waypoint> wps = {{{1.5, 2.25}, std::pair{1, 0}, 0}, {{3.0, -1.0}, std::nullopt, 1}};
  std::stringstream ss;
  write_waypoints(ss, wps);
  const auto back = read_waypoints(ss);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[0].position, wps[0].position);
  EXPECT_EQ(back[0].unit_index, wps[0].unit_index);
  EXPECT_FALSE(back[1].unit_index);
  std::stringstream bad("1.0\n");
  EXPECT_THROW(read_waypoints(bad), ParseError);
  std::stringstream half("1 2 3\n");
  EXPECT_THROW(read_waypoints(half), ParseError);
}
