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


// Reference shortest-path length on an 8-connected grid without corner
// cutting, computed by repeated full relaxation sweeps (no priority queue).

#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "wpnav/occupancy.hpp"

namespace oracle {

inline std::optional<double> grid_distance(const wpnav::OccupancyMap& m, wpnav::Cell s,
                                           wpnav::Cell g) {
  const double inf = std::numeric_limits<double>::infinity();
  const int R = m.rows();
  const int C = m.cols();
  std::vector<double> d(static_cast<std::size_t>(R * C), inf);
  auto at = [&](int r, int c) -> double& { return d[static_cast<std::size_t>(r * C + c)]; };
  auto open = [&](int r, int c) { return r >= 0 && r < R && c >= 0 && c < C && !m.occupied({r, c}); };
  if (!open(s.row, s.col) || !open(g.row, g.col)) return std::nullopt;
  at(s.row, s.col) = 0.0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int r = 0; r < R; ++r) {
      for (int c = 0; c < C; ++c) {
        if (!open(r, c) || at(r, c) == inf) continue;
        for (int dr = -1; dr <= 1; ++dr) {
          for (int dc = -1; dc <= 1; ++dc) {
            if ((dr == 0 && dc == 0) || !open(r + dr, c + dc)) continue;
            const bool diag = dr != 0 && dc != 0;
            if (diag && !(open(r + dr, c) && open(r, c + dc))) continue;
            const double nd = at(r, c) + (diag ? std::sqrt(2.0) : 1.0);
            if (nd < at(r + dr, c + dc) - 1e-12) {
              at(r + dr, c + dc) = nd;
              changed = true;
            }
          }
        }
      }
    }
  }
  if (at(g.row, g.col) == inf) return std::nullopt;
  return at(g.row, g.col);
}

}  // namespace oracle
