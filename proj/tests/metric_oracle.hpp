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


// Hand-built episode fixtures with independently computed metrics.

#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "wpnav/evaluation.hpp"

namespace oracle {

struct RobotFixture {
  double farthest;                     // meters from the origin
  std::optional<double> success_time;  // seconds
};

struct MetricFixture {
  std::string name;
  double time_limit;
  std::vector<RobotFixture> robots;
  // Expected values worked out by hand.
  double sr;
  double atd;
  std::optional<double> ast;
};

inline std::vector<MetricFixture> metric_fixtures() {
  return {
      {"all_fail", 16.0, {{2.0, {}}, {4.0, {}}}, 0.0, 3.0, std::nullopt},
      {"one_of_two", 30.0, {{9.0, 12.0}, {3.0, {}}}, 0.5, 6.0, 21.0},
      {"all_succeed", 16.0, {{8.6, 6.0}, {8.6, 7.0}, {8.7, 8.0}}, 1.0, 25.9 / 3.0, 7.0},
      {"single_robot_timeout", 20.0, {{0.0, {}}}, 0.0, 0.0, std::nullopt},
      {"quarter", 10.0, {{5.0, 2.5}, {1.0, {}}, {1.0, {}}, {1.0, {}}}, 0.25, 2.0, 8.125},
  };
}

// Episode log whose path reaches `farthest` along a bent line and then comes
// back part way, so the farthest point is not the last one.
inline wpnav::EpisodeLog make_log(const RobotFixture& f, double time_limit) {
  using namespace wpnav;
  EpisodeLog log;
  log.origin = {1.0, -2.0};
  const Vec2 dir{0.6, 0.8};
  const double dt = 0.5;
  const int n = static_cast<int>(std::lround(time_limit / dt));
  for (int k = 0; k <= n; ++k) {
    const double frac = static_cast<double>(k) / n;
    const double along = frac < 0.5 ? f.farthest * 2 * frac : f.farthest * (1.5 - frac);
    log.trajectory.push_back({k * dt, log.origin + dir * along, 0.0, {}, std::nullopt});
  }
  if (f.success_time) {
    log.success_time = f.success_time;
    log.outcome = Outcome::Success;
    log.events.push_back({*f.success_time, EventKind::Success});
  } else {
    log.outcome = f.farthest > 0 ? Outcome::Failed : Outcome::Timeout;
  }
  return log;
}

// Straight from the definitions, by a different accumulation order.
inline std::vector<double> recompute(const MetricFixture& fx) {
  double sr = 0, atd = 0, ast = 0;
  for (const auto& r : fx.robots) {
    if (r.success_time) sr += 1;
    atd += r.farthest;
    ast += r.success_time.value_or(fx.time_limit);
  }
  const double n = static_cast<double>(fx.robots.size());
  return {sr / n, atd / n, sr > 0 ? ast / n : -1.0};
}

}  // namespace oracle
