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
#include <compare>
#include <cstdint>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "wpnav/errors.hpp"
#include "wpnav/geometry.hpp"
#include "wpnav/occupancy.hpp"
#include "wpnav/waypoint.hpp"

namespace wpnav {

/// Path length on an 8-connected grid as `straight + diagonal * sqrt(2)` cell
/// steps. Kept as two integers so comparisons are exact: since sqrt(2) is
/// irrational, two costs are equal only if both counts match.
struct OctileCost {
  std::int64_t straight = 0;
  std::int64_t diagonal = 0;

  double cells() const { return straight + diagonal * std::numbers::sqrt2; }

  OctileCost operator+(const OctileCost& o) const {
    return {straight + o.straight, diagonal + o.diagonal};
  }
  bool operator==(const OctileCost&) const = default;

  friend std::strong_ordering operator<=>(const OctileCost& a, const OctileCost& b) {
    // sign(x + y*sqrt(2)) without floating point.
    const std::int64_t x = a.straight - b.straight;
    const std::int64_t y = a.diagonal - b.diagonal;
    if (x == 0 && y == 0) return std::strong_ordering::equal;
    if (x >= 0 && y >= 0) return std::strong_ordering::greater;
    if (x <= 0 && y <= 0) return std::strong_ordering::less;
    const std::int64_t xx = x * x;
    const std::int64_t yy2 = 2 * y * y;
    if (x > 0) return xx > yy2 ? std::strong_ordering::greater : std::strong_ordering::less;
    return yy2 > xx ? std::strong_ordering::greater : std::strong_ordering::less;
  }
};

struct PlanRequest {
  Vec2 start;  // p_s
  Vec2 goal;   // p_e
  OccupancyMap map;
};

struct PlannedPath {
  std::vector<Cell> cells;
  std::vector<Vec2> world_points;  // cell centers
  OctileCost steps;
  double cost = 0.0;  // meters
};

enum class Heuristic { Euclidean, Octile };

namespace detail {

struct Endpoints {
  Cell start;
  Cell goal;
};

inline Endpoints check_request(const PlanRequest& req) {
  const Cell s = req.map.cell_at(req.start);
  const Cell g = req.map.cell_at(req.goal);
  if (!req.map.in_bounds(s)) throw PlanError(PlanError::Kind::OutOfBounds, "start outside the map");
  if (!req.map.in_bounds(g)) throw PlanError(PlanError::Kind::OutOfBounds, "goal outside the map");
  if (req.map.occupied(s)) throw PlanError(PlanError::Kind::StartOccupied, "start cell is occupied");
  if (req.map.occupied(g)) throw PlanError(PlanError::Kind::GoalOccupied, "goal cell is occupied");
  return {s, g};
}

struct Move {
  int dr;
  int dc;
  bool diagonal;
};

inline constexpr Move kMoves[8] = {{0, 1, false},  {1, 0, false},  {0, -1, false}, {-1, 0, false},
                                   {1, 1, true},   {1, -1, true},  {-1, 1, true},  {-1, -1, true}};

// Diagonal steps may not cut an occupied corner.
inline bool can_move(const OccupancyMap& m, Cell from, const Move& mv) {
  const Cell to{from.row + mv.dr, from.col + mv.dc};
  if (!m.free(to)) return false;
  if (!mv.diagonal) return true;
  return m.free({from.row + mv.dr, from.col}) && m.free({from.row, from.col + mv.dc});
}

inline PlannedPath rebuild(const OccupancyMap& m, const std::vector<int>& parent, int goal,
                           OctileCost steps) {
  PlannedPath p;
  for (int at = goal; at >= 0; at = parent[static_cast<std::size_t>(at)]) {
    p.cells.push_back({at / m.cols(), at % m.cols()});
  }
  std::reverse(p.cells.begin(), p.cells.end());
  for (const Cell& c : p.cells) p.world_points.push_back(m.cell_center(c));
  p.steps = steps;
  p.cost = steps.cells() * m.cell_size();
  return p;
}

}  // namespace detail

/// A* over the 8-connected free cells, unit cost per straight step and
/// sqrt(2) per diagonal. Both heuristics are admissible, so the returned cost
/// equals the Dijkstra optimum. Open-list ties go to the lower heuristic, then
/// to the earlier insertion.
inline PlannedPath plan_astar(const PlanRequest& req, Heuristic heuristic = Heuristic::Octile) {
  const auto [start, goal] = detail::check_request(req);
  const OccupancyMap& m = req.map;
  const int n = m.rows() * m.cols();
  auto id = [&](Cell c) { return c.row * m.cols() + c.col; };
  auto h = [&](Cell c) {
    const double dx = std::abs(c.col - goal.col);
    const double dy = std::abs(c.row - goal.row);
    const double v = heuristic == Heuristic::Octile
                         ? std::max(dx, dy) - std::min(dx, dy) + std::numbers::sqrt2 * std::min(dx, dy)
                         : std::sqrt(dx * dx + dy * dy);
    return v * (1.0 - 1e-12);  // stays below the true cost despite rounding
  };

  struct Node {
    double f;
    double h;
    std::uint64_t seq;
    int idx;
    OctileCost g;
  };
  auto worse = [](const Node& a, const Node& b) {
    if (a.f != b.f) return a.f > b.f;
    if (a.h != b.h) return a.h > b.h;
    return a.seq > b.seq;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);
  std::vector<OctileCost> g(static_cast<std::size_t>(n));
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::uint64_t seq = 0;

  seen[static_cast<std::size_t>(id(start))] = 1;
  open.push({h(start), h(start), seq++, id(start), {}});
  while (!open.empty()) {
    const Node cur = open.top();
    open.pop();
    if (cur.g != g[static_cast<std::size_t>(cur.idx)]) continue;  // stale entry
    if (cur.idx == id(goal)) return detail::rebuild(m, parent, cur.idx, cur.g);
    const Cell c{cur.idx / m.cols(), cur.idx % m.cols()};
    for (const auto& mv : detail::kMoves) {
      if (!detail::can_move(m, c, mv)) continue;
      const Cell nb{c.row + mv.dr, c.col + mv.dc};
      const auto ni = static_cast<std::size_t>(id(nb));
      const OctileCost ng = cur.g + (mv.diagonal ? OctileCost{0, 1} : OctileCost{1, 0});
      if (seen[ni] && !(ng < g[ni])) continue;
      seen[ni] = 1;
      g[ni] = ng;
      parent[ni] = cur.idx;
      const double hn = h(nb);
      open.push({ng.cells() + hn, hn, seq++, static_cast<int>(ni), ng});
    }
  }
  throw PlanError(PlanError::Kind::NoPath, "goal is not reachable from start");
}

/// Uniform-cost search with exact cost ordering; the optimality reference
/// for plan_astar.
inline PlannedPath plan_dijkstra(const PlanRequest& req) {
  const auto [start, goal] = detail::check_request(req);
  const OccupancyMap& m = req.map;
  const int n = m.rows() * m.cols();
  auto id = [&](Cell c) { return c.row * m.cols() + c.col; };

  struct Node {
    OctileCost g;
    std::uint64_t seq;
    int idx;
  };
  auto worse = [](const Node& a, const Node& b) {
    if (a.g != b.g) return a.g > b.g;
    return a.seq > b.seq;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(worse)> open(worse);
  std::vector<OctileCost> dist(static_cast<std::size_t>(n));
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  std::vector<int> parent(static_cast<std::size_t>(n), -1);
  std::uint64_t seq = 0;

  seen[static_cast<std::size_t>(id(start))] = 1;
  open.push({{}, seq++, id(start)});
  while (!open.empty()) {
    const Node cur = open.top();
    open.pop();
    const auto ci = static_cast<std::size_t>(cur.idx);
    if (done[ci]) continue;
    done[ci] = 1;
    if (cur.idx == id(goal)) return detail::rebuild(m, parent, cur.idx, cur.g);
    const Cell c{cur.idx / m.cols(), cur.idx % m.cols()};
    for (const auto& mv : detail::kMoves) {
      if (!detail::can_move(m, c, mv)) continue;
      const auto ni = static_cast<std::size_t>(id({c.row + mv.dr, c.col + mv.dc}));
      if (done[ni]) continue;
      const OctileCost ng = cur.g + (mv.diagonal ? OctileCost{0, 1} : OctileCost{1, 0});
      if (seen[ni] && !(ng < dist[ni])) continue;
      seen[ni] = 1;
      dist[ni] = ng;
      parent[ni] = cur.idx;
      open.push({ng, seq++, static_cast<int>(ni)});
    }
  }
  throw PlanError(PlanError::Kind::NoPath, "goal is not reachable from start");
}

inline double path_length(const std::vector<Vec2>& pts) {
  double len = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) len += distance(pts[i - 1], pts[i]);
  return len;
}

/// Splits the path into ceil(L / max_gap) equal arc-length intervals and
/// places a waypoint at the end of each. A path shorter than `min_gap`
/// yields just its end point.
inline std::vector<Waypoint> segment_path(const std::vector<Vec2>& pts, double min_gap,
                                          double max_gap) {
  if (!(min_gap > 0.0 && min_gap <= max_gap)) {
    throw InvalidArgument("segmentation needs 0 < min_gap <= max_gap");
  }
  if (pts.empty()) throw InvalidArgument("cannot segment an empty path");
  std::vector<Waypoint> out;
  const double total = path_length(pts);
  if (total < min_gap) {
    out.push_back({pts.back(), std::nullopt, 0});
    return out;
  }
  const int n = std::max(1, static_cast<int>(std::ceil(total / max_gap - 1e-9)));
  const double step = total / n;
  std::size_t seg = 1;
  double seg_start = 0.0;  // arc length at pts[seg - 1]
  for (int k = 1; k <= n; ++k) {
    Waypoint w;
    w.id = k - 1;
    if (k == n) {
      w.position = pts.back();
    } else {
      const double s = step * k;
      while (seg + 1 < pts.size() && seg_start + distance(pts[seg - 1], pts[seg]) < s) {
        seg_start += distance(pts[seg - 1], pts[seg]);
        ++seg;
      }
      const double l = distance(pts[seg - 1], pts[seg]);
      const double a = l > 0.0 ? (s - seg_start) / l : 0.0;
      w.position = pts[seg - 1] + (pts[seg] - pts[seg - 1]) * a;
    }
    out.push_back(w);
  }
  return out;
}

inline std::vector<Waypoint> segment_path(const PlannedPath& path, double min_gap, double max_gap) {
  return segment_path(path.world_points, min_gap, max_gap);
}

// Point at arc length `s` along a polyline.
inline Vec2 point_at_arc(const std::vector<Vec2>& pts, double s) {
  double acc = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double l = distance(pts[i - 1], pts[i]);
    if (acc + l >= s && l > 0.0) return pts[i - 1] + (pts[i] - pts[i - 1]) * ((s - acc) / l);
    acc += l;
  }
  return pts.back();
}

// Whether every sample of segment a-b lies in a free, in-bounds cell.
inline bool chord_free(const OccupancyMap& map, Vec2 a, Vec2 b) {
  const double step = map.cell_size() / 4.0;
  const int n = std::max(1, static_cast<int>(std::ceil(distance(a, b) / step)));
  for (int i = 0; i <= n; ++i) {
    const Cell c = map.cell_at(a + (b - a) * (static_cast<double>(i) / n));
    if (!map.in_bounds(c) || map.occupied(c)) return false;
  }
  return true;
}

/// Greedy segmentation that keeps the straight line between consecutive
/// waypoints free on `clearance`. Each waypoint is the farthest path point
/// within `max_gap` of arc length whose chord from the previous waypoint is
/// clear, and at least `min_gap` along the path. Spacing falls below
/// `min_gap` only for a final leg that cannot be lengthened.
inline std::vector<Waypoint> segment_path_clear(const std::vector<Vec2>& pts, double min_gap,
                                                double max_gap, const OccupancyMap& clearance) {
  if (!(min_gap > 0.0 && min_gap <= max_gap)) {
    throw InvalidArgument("segmentation needs 0 < min_gap <= max_gap");
  }
  if (pts.empty()) throw InvalidArgument("cannot segment an empty path");
  const double total = path_length(pts);
  std::vector<Waypoint> out;
  if (total < min_gap) {
    out.push_back({pts.back(), std::nullopt, 0});
    return out;
  }
  const double probe = clearance.cell_size() / 2.0;
  double s_prev = 0.0;
  Vec2 prev = pts.front();
  while (true) {
    if (total - s_prev <= max_gap && chord_free(clearance, prev, pts.back())) {
      out.push_back({pts.back(), std::nullopt, static_cast<int>(out.size())});
      break;
    }
    double chosen = std::min(s_prev + min_gap, total);
    for (double s = std::min(s_prev + max_gap, total); s >= s_prev + min_gap - 1e-12; s -= probe) {
      if (chord_free(clearance, prev, point_at_arc(pts, s))) {
        chosen = s;
        break;
      }
    }
    if (total - chosen > 0.0 && total - chosen < min_gap && total - min_gap >= s_prev + min_gap &&
        chord_free(clearance, prev, point_at_arc(pts, total - min_gap))) {
      chosen = total - min_gap;
    }
    if (chosen >= total) {
      out.push_back({pts.back(), std::nullopt, static_cast<int>(out.size())});
      break;
    }
    prev = point_at_arc(pts, chosen);
    s_prev = chosen;
    out.push_back({prev, std::nullopt, static_cast<int>(out.size())});
  }
  return out;
}

}  // namespace wpnav
