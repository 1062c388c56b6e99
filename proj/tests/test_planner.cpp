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

#include "path_oracle.hpp"
#include "wpnav/planner.hpp"
#include "wpnav/rng.hpp"

using namespace wpnav;

namespace {

OccupancyMap random_map(Rng& rng, int n, double p) {
  OccupancyMap m(n, n, 1.0);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m.set({r, c}, rng.uniform() < p);
  m.set({0, 0}, false);
  m.set({n - 1, n - 1}, false);
  return m;
}

PlanRequest corners(const OccupancyMap& m) {
  return {m.cell_center({0, 0}), m.cell_center({m.rows() - 1, m.cols() - 1}), m};
}

bool valid_steps(const OccupancyMap& m, const PlannedPath& p) {
  for (std::size_t i = 1; i < p.cells.size(); ++i) {
    const Cell a = p.cells[i - 1];
    const Cell b = p.cells[i];
    const int dr = b.row - a.row;
    const int dc = b.col - a.col;
    if (std::abs(dr) > 1 || std::abs(dc) > 1 || (dr == 0 && dc == 0)) return false;
    if (!m.free(b)) return false;
    if (dr != 0 && dc != 0 && !(m.free({a.row + dr, a.col}) && m.free({a.row, a.col + dc}))) return false;
  }
  return true;
}

}  // namespace

TEST(OctileCost, ExactOrdering) {
  EXPECT_LT((OctileCost{1, 0}), (OctileCost{0, 1}));
  EXPECT_GT((OctileCost{2, 0}), (OctileCost{0, 1}));
  EXPECT_LT((OctileCost{0, 5}), (OctileCost{8, 0}));   // 7.07 < 8
  EXPECT_GT((OctileCost{0, 5}), (OctileCost{7, 0}));   // 7.07 > 7
  EXPECT_LT((OctileCost{0, 70}), (OctileCost{99, 0}));  // 98.99 < 99
  EXPECT_GT((OctileCost{3, 1}), (OctileCost{1, 2}));    // 4.41 > 3.83
  EXPECT_EQ((OctileCost{3, 4}) <=> (OctileCost{3, 4}), std::strong_ordering::equal);
  EXPECT_DOUBLE_EQ((OctileCost{1, 1}).cells(), 1.0 + std::sqrt(2.0));
}

TEST(Planner, EmptyMapDiagonal) {
  const OccupancyMap m(5, 5, 0.5);
  const PlannedPath p = plan_astar(corners(m));
  EXPECT_EQ(p.steps, (OctileCost{0, 4}));
  EXPECT_NEAR(p.cost, 4 * std::sqrt(2.0) * 0.5, 1e-12);
  EXPECT_EQ(p.cells.front(), (Cell{0, 0}));
  EXPECT_EQ(p.cells.back(), (Cell{4, 4}));
  EXPECT_EQ(p.world_points.front(), (Vec2{0.25, 0.25}));
}

TEST(Planner, NoCornerCutting) {
  OccupancyMap m(2, 2, 1.0);
  m.set({0, 1}, true);
  const PlannedPath p = plan_astar(corners(m));
  EXPECT_EQ(p.steps, (OctileCost{2, 0}));
  EXPECT_EQ(plan_dijkstra(corners(m)).steps, (OctileCost{2, 0}));
  m.set({1, 0}, true);
  EXPECT_THROW(plan_astar(corners(m)), PlanError);
}

TEST(Planner, Errors) {
  OccupancyMap m(4, 4, 1.0);
  m.set({0, 0}, true);
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const PlanError& e) {
      return e.kind();
    }
    return PlanError::Kind::EmptyPath;
  };
  EXPECT_EQ(kind_of([&] { plan_astar(corners(m)); }), PlanError::Kind::StartOccupied);
  m.set({0, 0}, false);
  m.set({3, 3}, true);
  EXPECT_EQ(kind_of([&] { plan_dijkstra(corners(m)); }), PlanError::Kind::GoalOccupied);
  m.set({3, 3}, false);
  EXPECT_EQ(kind_of([&] { plan_astar({{-1, 0.5}, {3.5, 3.5}, m}); }), PlanError::Kind::OutOfBounds);
  EXPECT_EQ(kind_of([&] { plan_astar({{0.5, 0.5}, {3.5, 4.5}, m}); }), PlanError::Kind::OutOfBounds);
  for (int r = 0; r < 4; ++r) m.set({r, 2}, true);
  EXPECT_EQ(kind_of([&] { plan_astar(corners(m)); }), PlanError::Kind::NoPath);
  EXPECT_EQ(kind_of([&] { plan_dijkstra(corners(m)); }), PlanError::Kind::NoPath);
}

TEST(Planner, StartEqualsGoal) {
  const OccupancyMap m(3, 3, 1.0);
  const PlannedPath p = plan_astar({{1.5, 1.5}, {1.6, 1.4}, m});
  ASSERT_EQ(p.cells.size(), 1u);
  EXPECT_EQ(p.steps, (OctileCost{}));
}

TEST(Planner, MatchesReferenceOnRandomMaps) {
  Rng rng(7);
  int solved = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const OccupancyMap m = random_map(rng, 12, 0.3);
    const auto ref = oracle::grid_distance(m, {0, 0}, {11, 11});
    if (!ref) {
      EXPECT_THROW(plan_astar(corners(m)), PlanError);
      EXPECT_THROW(plan_dijkstra(corners(m)), PlanError);
      continue;
    }
    ++solved;
    const PlannedPath a = plan_astar(corners(m));
    const PlannedPath d = plan_dijkstra(corners(m));
    const PlannedPath e = plan_astar(corners(m), Heuristic::Euclidean);
    EXPECT_NEAR(a.steps.cells(), *ref, 1e-9);
    EXPECT_EQ(a.steps, d.steps);
    EXPECT_EQ(a.steps, e.steps);
    EXPECT_TRUE(valid_steps(m, a));
    EXPECT_TRUE(valid_steps(m, d));
  }
  EXPECT_GT(solved, 10);
}

TEST(Segmentation, SpacingWithinBounds) {
  const std::vector<Vec2> line{{0, 0}, {10, 0}};
  const auto w = segment_path(line, 0.5, 3.0);
  ASSERT_EQ(w.size(), 4u);  // ceil(10 / 3) intervals of 2.5 m
  EXPECT_NEAR(w[0].position.x, 2.5, 1e-12);
  EXPECT_EQ(w.back().position, (Vec2{10, 0}));
  const std::vector<Vec2> bend{{0, 0}, {3, 0}, {3, 4}};
  const auto b = segment_path(bend, 0.5, 3.0);
  ASSERT_EQ(b.size(), 3u);  // 7 m in thirds
  EXPECT_NEAR(b[0].position.x, 7.0 / 3.0, 1e-12);
  EXPECT_NEAR(b[1].position.x, 3.0, 1e-12);
  EXPECT_NEAR(b[1].position.y, 14.0 / 3.0 - 3.0, 1e-12);
  for (std::size_t i = 0; i < b.size(); ++i) EXPECT_EQ(b[i].id, static_cast<int>(i));
}

TEST(Segmentation, ShortAndDegeneratePaths) {
  const auto s = segment_path(std::vector<Vec2>{{0, 0}, {0.3, 0}}, 0.5, 3.0);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].position, (Vec2{0.3, 0}));
  EXPECT_EQ(segment_path(std::vector<Vec2>{{1, 1}}, 0.5, 3.0).size(), 1u);
  EXPECT_THROW(segment_path(std::vector<Vec2>{}, 0.5, 3.0), InvalidArgument);
  EXPECT_THROW(segment_path(std::vector<Vec2>{{0, 0}}, 3.0, 0.5), InvalidArgument);
}

TEST(Segmentation, ClearChordsAroundCorner) {
  // L-shaped corridor: wall block in the inner corner.
  OccupancyMap m(20, 20, 0.5);
  for (int r = 0; r < 16; ++r)
    for (int c = 4; c < 20; ++c) m.set({r, c}, true);
  const PlannedPath p = plan_astar({{1.0, 1.0}, {9.0, 9.0}, m});
  const auto w = segment_path_clear(p.world_points, 0.5, 3.0, m);
  Vec2 prev = p.world_points.front();
  for (std::size_t i = 0; i < w.size(); ++i) {
    EXPECT_TRUE(chord_free(m, prev, w[i].position)) << i;
    const double gap = distance(prev, w[i].position);
    EXPECT_LE(gap, 3.0 + 1e-9);
    if (i + 1 < w.size()) EXPECT_GE(gap, 0.5 - 1e-9);
    prev = w[i].position;
  }
  EXPECT_EQ(w.back().position, p.world_points.back());
}
