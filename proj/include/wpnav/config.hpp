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
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "wpnav/capabilities.hpp"
#include "wpnav/errors.hpp"
#include "wpnav/evaluation.hpp"
#include "wpnav/navigation.hpp"
#include "wpnav/reward.hpp"
#include "wpnav/terrain.hpp"
#include "wpnav/waypoint.hpp"

namespace wpnav {

struct ScenarioConfig {
  std::string type = "wp_fixed";  // wp_fixed | wp_random | layout
  int rows = 2;                   // track rows, or area rows for wp_random
  int cols = 2;
  std::vector<UnitKind> kinds = {UnitKind::Hurdle, UnitKind::Box, UnitKind::Gap, UnitKind::Obstacle};
  std::vector<double> difficulty = {0.5};  // one value, or one per track row
  std::vector<std::string> layout;
  std::vector<Rect> walls;
  std::vector<UnitParamOverride> params;  // layout only
  TerrainOptions terrain;
};

struct TaskConfig {
  int robots = 18;
  std::optional<double> time_limit;  // per-task default when unset
  double dt = kControlDt;
  bool with_obstacles = false;
  OmniArena arena = OmniArena::Terrain;
  double arena_size = 21.0;
  int arena_units = 7;
  double success_distance = 8.5;
  double dwell = 0.0;
  double heatmap_cell = 0.25;
  int parallel = 1;
};

struct NavigateConfig {
  std::optional<Pose2> start;
  std::optional<Vec2> goal;
  double time_limit = 120.0;
  double dwell = 2.0;
};

struct RunConfig {
  std::uint64_t seed = 0;
  ScenarioConfig scenario;
  RewardConfig reward;
  RobotCapabilities capabilities;
  WaypointConfig waypoints;
  TaskConfig task;
  PlannerConfig planner;
  std::string planner_spec = "astar";  // astar | dijkstra | llm | replay:<file>
  std::string replay_file;
  NavigateConfig navigate;
  std::string output_dir = "runs";
};

namespace detail {

using Json = nlohmann::ordered_json;

inline int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Config reader that knows where each key sits in the source text, so
// validation errors carry a line number.
class ConfigReader {
 public:
  explicit ConfigReader(const std::string& text) : text_(text) {}

  int line_of(const std::vector<std::string>& path) const {
    std::size_t pos = 0;
    for (const auto& key : path) {
      const std::size_t at = text_.find('"' + key + '"', pos);
      if (at == std::string::npos) return 0;
      pos = at + 1;
    }
    return path.empty() ? 0 : line_of_offset(text_, pos);
  }

  static std::string dotted(const std::vector<std::string>& path) {
    std::string s;
    for (const auto& k : path) s += (s.empty() ? "" : ".") + k;
    return s;
  }

  [[noreturn]] void fail(const std::vector<std::string>& path, const std::string& msg) const {
    throw ConfigError(dotted(path) + ": " + msg, line_of(path));
  }

  void allow(const Json& obj, const std::vector<std::string>& path,
             std::initializer_list<const char*> keys) const {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& [k, v] : obj.items()) {
      bool ok = false;
      for (const char* a : keys) ok = ok || k == a;
      if (!ok) {
        auto p = path;
        p.push_back(k);
        fail(p, "unknown key");
      }
    }
  }

  double number(const Json& v, const std::vector<std::string>& path) const {
    if (!v.is_number()) fail(path, "expected a number");
    return v.get<double>();
  }
  int integer(const Json& v, const std::vector<std::string>& path) const {
    if (!v.is_number_integer()) fail(path, "expected an integer");
    return v.get<int>();
  }
  bool boolean(const Json& v, const std::vector<std::string>& path) const {
    if (!v.is_boolean()) fail(path, "expected true or false");
    return v.get<bool>();
  }
  std::string string(const Json& v, const std::vector<std::string>& path) const {
    if (!v.is_string()) fail(path, "expected a string");
    return v.get<std::string>();
  }
  std::vector<double> numbers(const Json& v, const std::vector<std::string>& path, std::size_t n = 0) const {
    if (!v.is_array() || (n && v.size() != n)) {
      fail(path, n ? "expected an array of " + std::to_string(n) + " numbers" : "expected an array of numbers");
    }
    std::vector<double> out;
    for (const auto& e : v) out.push_back(number(e, path));
    return out;
  }

  template <class F>
  void field(const Json& obj, const std::vector<std::string>& path, const char* key, F&& apply) const {
    if (!obj.contains(key)) return;
    auto p = path;
    p.push_back(key);
    apply(obj.at(key), p);
  }

 private:
  const std::string& text_;
};

}  // namespace detail

inline RunConfig parse_config(const std::string& text) {
  using detail::Json;
  using Path = std::vector<std::string>;
  Json root;
  try {
    root = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what(), detail::line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  const detail::ConfigReader rd(text);
  RunConfig cfg;
  rd.allow(root, {}, {"seed", "scenario", "reward", "capabilities", "waypoints", "task", "planner",
                      "navigate", "output"});

  rd.field(root, {}, "seed", [&](const Json& v, const Path& p) {
    if (!v.is_number_unsigned()) rd.fail(p, "expected a non-negative integer");
    cfg.seed = v.get<std::uint64_t>();
  });

  rd.field(root, {}, "scenario", [&](const Json& s, const Path& p) {
    rd.allow(s, p, {"type", "rows", "cols", "kinds", "difficulty", "layout", "walls", "params", "unit_size",
                    "resolution", "gap_depth", "hurdle_thickness", "obstacle_height", "wall_height"});
    auto& sc = cfg.scenario;
    rd.field(s, p, "type", [&](const Json& v, const Path& q) {
      sc.type = rd.string(v, q);
      if (sc.type != "wp_fixed" && sc.type != "wp_random" && sc.type != "layout") {
        rd.fail(q, "must be wp_fixed, wp_random or layout");
      }
    });
    rd.field(s, p, "rows", [&](const Json& v, const Path& q) { sc.rows = rd.integer(v, q); });
    rd.field(s, p, "cols", [&](const Json& v, const Path& q) { sc.cols = rd.integer(v, q); });
    rd.field(s, p, "kinds", [&](const Json& v, const Path& q) {
      if (!v.is_array() || v.empty()) rd.fail(q, "expected a non-empty array of unit kinds");
      sc.kinds.clear();
      for (const auto& e : v) {
        auto k = unit_kind_from_string(rd.string(e, q));
        if (!k || *k == UnitKind::Wall) rd.fail(q, "unknown track kind '" + e.get<std::string>() + "'");
        sc.kinds.push_back(*k);
      }
    });
    rd.field(s, p, "difficulty", [&](const Json& v, const Path& q) {
      sc.difficulty = v.is_array() ? rd.numbers(v, q) : std::vector<double>{rd.number(v, q)};
      for (double d : sc.difficulty) {
        if (!(d >= 0.0 && d <= 1.0)) rd.fail(q, "difficulty must lie in [0, 1]");
      }
    });
    rd.field(s, p, "layout", [&](const Json& v, const Path& q) {
      if (!v.is_array()) rd.fail(q, "expected an array of strings");
      sc.layout.clear();
      for (const auto& e : v) sc.layout.push_back(rd.string(e, q));
    });
    rd.field(s, p, "walls", [&](const Json& v, const Path& q) {
      if (!v.is_array()) rd.fail(q, "expected an array of [x0, y0, x1, y1]");
      for (const auto& e : v) {
        const auto w = rd.numbers(e, q, 4);
        if (!(w[0] < w[2] && w[1] < w[3])) rd.fail(q, "wall needs x0 < x1 and y0 < y1");
        sc.walls.push_back({{w[0], w[1]}, {w[2], w[3]}});
      }
    });
    rd.field(s, p, "params", [&](const Json& v, const Path& q) {
      if (!v.is_array()) rd.fail(q, "expected an array of [row, col, value]");
      for (const auto& e : v) {
        const auto o = rd.numbers(e, q, 3);
        if (o[0] != std::floor(o[0]) || o[1] != std::floor(o[1])) rd.fail(q, "row and col must be integers");
        if (!(o[2] > 0.0)) rd.fail(q, "parameter must be positive");
        sc.params.push_back({static_cast<int>(o[0]), static_cast<int>(o[1]), o[2]});
      }
    });
    auto positive = [&](const char* key, double& out) {
      rd.field(s, p, key, [&](const Json& v, const Path& q) {
        out = rd.number(v, q);
        if (!(out > 0.0)) rd.fail(q, "must be positive");
      });
    };
    positive("unit_size", sc.terrain.unit_size);
    positive("resolution", sc.terrain.resolution);
    positive("gap_depth", sc.terrain.gap_depth);
    positive("hurdle_thickness", sc.terrain.hurdle_thickness);
    positive("obstacle_height", sc.terrain.obstacle_height);
    positive("wall_height", sc.terrain.wall_height);
    if (sc.rows < 1 || sc.cols < 1) rd.fail(p, "rows and cols must be at least 1");
  });

  rd.field(root, {}, "reward", [&](const Json& r, const Path& p) {
    rd.allow(r, p, {"epsilon", "d_t", "cosine_floor", "joint_norm", "weights"});
    auto& rc = cfg.reward;
    rd.field(r, p, "epsilon", [&](const Json& v, const Path& q) { rc.epsilon = rd.number(v, q); });
    rd.field(r, p, "d_t", [&](const Json& v, const Path& q) { rc.d_t = rd.number(v, q); });
    rd.field(r, p, "cosine_floor", [&](const Json& v, const Path& q) { rc.cosine_floor = rd.number(v, q); });
    rd.field(r, p, "joint_norm", [&](const Json& v, const Path& q) {
      const auto n = rd.string(v, q);
      if (n == "l1") rc.joint_norm = JointNorm::L1;
      else if (n == "l2") rc.joint_norm = JointNorm::L2;
      else rd.fail(q, "must be l1 or l2");
    });
    rd.field(r, p, "weights", [&](const Json& w, const Path& q) {
      rd.allow(w, q, {"reach", "stay", "track", "yaw"});
      rd.field(w, q, "reach", [&](const Json& v, const Path& k) { rc.weights.reach = rd.number(v, k); });
      rd.field(w, q, "stay", [&](const Json& v, const Path& k) { rc.weights.stay = rd.number(v, k); });
      rd.field(w, q, "track", [&](const Json& v, const Path& k) { rc.weights.track = rd.number(v, k); });
      rd.field(w, q, "yaw", [&](const Json& v, const Path& k) { rc.weights.yaw = rd.number(v, k); });
    });
    if (!rc.valid()) rd.fail(p, "epsilon and d_t must be positive and cosine_floor inside (-1, 1)");
  });

  rd.field(root, {}, "capabilities", [&](const Json& c, const Path& p) {
    rd.allow(c, p, {"max_climb", "max_hurdle", "max_gap", "body_radius", "max_speed", "max_yaw_rate"});
    auto& cc = cfg.capabilities;
    for (auto [key, dst] : {std::pair{"max_climb", &cc.max_climb}, {"max_hurdle", &cc.max_hurdle},
                            {"max_gap", &cc.max_gap}, {"body_radius", &cc.body_radius},
                            {"max_speed", &cc.max_speed}, {"max_yaw_rate", &cc.max_yaw_rate}}) {
      rd.field(c, p, key, [&, dst = dst](const Json& v, const Path& q) {
        *dst = rd.number(v, q);
        if (!(*dst > 0.0)) rd.fail(q, "must be positive");
      });
    }
  });

  rd.field(root, {}, "waypoints", [&](const Json& w, const Path& p) {
    rd.allow(w, p, {"reach_radius", "stay_duration", "preset_offset"});
    auto& wc = cfg.waypoints;
    rd.field(w, p, "reach_radius", [&](const Json& v, const Path& q) {
      wc.reach_radius = rd.number(v, q);
      if (!(wc.reach_radius > 0.0)) rd.fail(q, "must be positive");
    });
    rd.field(w, p, "stay_duration", [&](const Json& v, const Path& q) {
      wc.stay_duration = rd.number(v, q);
      if (!(wc.stay_duration >= 0.0)) rd.fail(q, "must be non-negative");
    });
    rd.field(w, p, "preset_offset", [&](const Json& v, const Path& q) { wc.preset_offset = rd.number(v, q); });
  });

  rd.field(root, {}, "task", [&](const Json& t, const Path& p) {
    rd.allow(t, p, {"robots", "time_limit", "dt", "with_obstacles", "arena", "arena_size", "arena_units",
                    "success_distance", "dwell", "heatmap_cell", "parallel"});
    auto& tc = cfg.task;
    rd.field(t, p, "robots", [&](const Json& v, const Path& q) {
      tc.robots = rd.integer(v, q);
      if (tc.robots < 1) rd.fail(q, "must be at least 1");
    });
    rd.field(t, p, "time_limit", [&](const Json& v, const Path& q) {
      tc.time_limit = rd.number(v, q);
      if (!(*tc.time_limit > 0.0)) rd.fail(q, "must be positive");
    });
    rd.field(t, p, "dt", [&](const Json& v, const Path& q) {
      tc.dt = rd.number(v, q);
      if (!(tc.dt > 0.0)) rd.fail(q, "must be positive");
    });
    rd.field(t, p, "with_obstacles", [&](const Json& v, const Path& q) { tc.with_obstacles = rd.boolean(v, q); });
    rd.field(t, p, "arena", [&](const Json& v, const Path& q) {
      const auto a = rd.string(v, q);
      if (a == "flat") tc.arena = OmniArena::Flat;
      else if (a == "terrain") tc.arena = OmniArena::Terrain;
      else rd.fail(q, "must be flat or terrain");
    });
    rd.field(t, p, "arena_size", [&](const Json& v, const Path& q) {
      tc.arena_size = rd.number(v, q);
      if (!(tc.arena_size > 0.0)) rd.fail(q, "must be positive");
    });
    rd.field(t, p, "arena_units", [&](const Json& v, const Path& q) {
      tc.arena_units = rd.integer(v, q);
      if (tc.arena_units < 1 || tc.arena_units % 2 == 0) rd.fail(q, "must be a positive odd integer");
    });
    rd.field(t, p, "success_distance", [&](const Json& v, const Path& q) { tc.success_distance = rd.number(v, q); });
    rd.field(t, p, "dwell", [&](const Json& v, const Path& q) {
      tc.dwell = rd.number(v, q);
      if (!(tc.dwell >= 0.0)) rd.fail(q, "must be non-negative");
    });
    rd.field(t, p, "heatmap_cell", [&](const Json& v, const Path& q) {
      tc.heatmap_cell = rd.number(v, q);
      if (!(tc.heatmap_cell > 0.0)) rd.fail(q, "must be positive");
    });
    rd.field(t, p, "parallel", [&](const Json& v, const Path& q) {
      tc.parallel = rd.integer(v, q);
      if (tc.parallel < 1) rd.fail(q, "must be at least 1");
    });
  });

  rd.field(root, {}, "planner", [&](const Json& pl, const Path& p) {
    rd.allow(pl, p, {"backend", "heuristic", "cell", "inflation", "wall_only", "min_gap", "max_gap", "retries"});
    auto& pc = cfg.planner;
    rd.field(pl, p, "backend", [&](const Json& v, const Path& q) { cfg.planner_spec = rd.string(v, q); });
    rd.field(pl, p, "heuristic", [&](const Json& v, const Path& q) {
      const auto h = rd.string(v, q);
      if (h == "octile") pc.heuristic = Heuristic::Octile;
      else if (h == "euclidean") pc.heuristic = Heuristic::Euclidean;
      else rd.fail(q, "must be octile or euclidean");
    });
    rd.field(pl, p, "cell", [&](const Json& v, const Path& q) {
      pc.cell = rd.number(v, q);
      if (!(pc.cell > 0.0)) rd.fail(q, "must be positive");
    });
    rd.field(pl, p, "inflation", [&](const Json& v, const Path& q) {
      pc.inflation = rd.number(v, q);
      if (!(pc.inflation >= 0.0)) rd.fail(q, "must be non-negative");
    });
    rd.field(pl, p, "wall_only", [&](const Json& v, const Path& q) { pc.wall_only = rd.boolean(v, q); });
    rd.field(pl, p, "min_gap", [&](const Json& v, const Path& q) { pc.min_gap = rd.number(v, q); });
    rd.field(pl, p, "max_gap", [&](const Json& v, const Path& q) { pc.max_gap = rd.number(v, q); });
    rd.field(pl, p, "retries", [&](const Json& v, const Path& q) {
      pc.llm_retries = rd.integer(v, q);
      if (pc.llm_retries < 0) rd.fail(q, "must be non-negative");
    });
    if (!(pc.min_gap > 0.0 && pc.min_gap <= pc.max_gap)) rd.fail(p, "need 0 < min_gap <= max_gap");
  });

  rd.field(root, {}, "navigate", [&](const Json& n, const Path& p) {
    rd.allow(n, p, {"start", "goal", "time_limit", "dwell"});
    auto& nc = cfg.navigate;
    rd.field(n, p, "start", [&](const Json& v, const Path& q) {
      if (!v.is_array() || (v.size() != 2 && v.size() != 3)) rd.fail(q, "expected [x, y] or [x, y, yaw]");
      const auto s = rd.numbers(v, q);
      nc.start = Pose2{{s[0], s[1]}, s.size() == 3 ? s[2] : 0.0};
    });
    rd.field(n, p, "goal", [&](const Json& v, const Path& q) {
      const auto g = rd.numbers(v, q, 2);
      nc.goal = Vec2{g[0], g[1]};
    });
    rd.field(n, p, "time_limit", [&](const Json& v, const Path& q) {
      nc.time_limit = rd.number(v, q);
      if (!(nc.time_limit > 0.0)) rd.fail(q, "must be positive");
    });
    rd.field(n, p, "dwell", [&](const Json& v, const Path& q) {
      nc.dwell = rd.number(v, q);
      if (!(nc.dwell >= 0.0)) rd.fail(q, "must be non-negative");
    });
  });

  rd.field(root, {}, "output", [&](const Json& o, const Path& p) {
    rd.allow(o, p, {"dir"});
    rd.field(o, p, "dir", [&](const Json& v, const Path& q) { cfg.output_dir = rd.string(v, q); });
  });

  // Cross-field checks.
  auto& sc = cfg.scenario;
  if (sc.type == "wp_fixed" && sc.difficulty.size() != 1 && static_cast<int>(sc.difficulty.size()) != sc.rows) {
    rd.fail({"scenario", "difficulty"}, "give one value or one per track row");
  }
  if (sc.type != "wp_fixed" && sc.difficulty.size() != 1) {
    rd.fail({"scenario", "difficulty"}, "expected a single value for this scenario type");
  }
  if (sc.type == "layout" && sc.layout.empty()) rd.fail({"scenario", "layout"}, "layout scenario needs a layout");
  const std::string& b = cfg.planner_spec;
  if (b == "astar") {
    cfg.planner.backend = PlannerBackend::AStar;
  } else if (b == "dijkstra") {
    cfg.planner.backend = PlannerBackend::Dijkstra;
  } else if (b == "llm") {
    cfg.planner.backend = PlannerBackend::Llm;
  } else if (b.rfind("replay:", 0) == 0 && b.size() > 7) {
    cfg.planner.backend = PlannerBackend::Llm;
    cfg.replay_file = b.substr(7);
  } else {
    rd.fail({"planner", "backend"}, "must be astar, dijkstra, llm or replay:<file>");
  }
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

/// Fully resolved config as JSON; parse_config on the dump yields the same
/// RunConfig.
inline nlohmann::ordered_json to_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["seed"] = c.seed;
  auto& s = j["scenario"];
  s["type"] = c.scenario.type;
  s["rows"] = c.scenario.rows;
  s["cols"] = c.scenario.cols;
  s["kinds"] = nlohmann::ordered_json::array();
  for (UnitKind k : c.scenario.kinds) s["kinds"].push_back(to_string(k));
  s["difficulty"] = c.scenario.difficulty;
  if (!c.scenario.layout.empty()) s["layout"] = c.scenario.layout;
  for (const auto& o : c.scenario.params) s["params"].push_back({o.row, o.col, o.param});
  if (!c.scenario.walls.empty()) {
    for (const Rect& w : c.scenario.walls) s["walls"].push_back({w.lo.x, w.lo.y, w.hi.x, w.hi.y});
  }
  s["unit_size"] = c.scenario.terrain.unit_size;
  s["resolution"] = c.scenario.terrain.resolution;
  s["gap_depth"] = c.scenario.terrain.gap_depth;
  s["hurdle_thickness"] = c.scenario.terrain.hurdle_thickness;
  s["obstacle_height"] = c.scenario.terrain.obstacle_height;
  s["wall_height"] = c.scenario.terrain.wall_height;
  auto& r = j["reward"];
  r["epsilon"] = c.reward.epsilon;
  r["d_t"] = c.reward.d_t;
  r["cosine_floor"] = c.reward.cosine_floor;
  r["joint_norm"] = c.reward.joint_norm == JointNorm::L1 ? "l1" : "l2";
  r["weights"] = {{"reach", c.reward.weights.reach}, {"stay", c.reward.weights.stay},
                  {"track", c.reward.weights.track}, {"yaw", c.reward.weights.yaw}};
  const auto& cc = c.capabilities;
  j["capabilities"] = {{"max_climb", cc.max_climb},     {"max_hurdle", cc.max_hurdle},
                       {"max_gap", cc.max_gap},         {"body_radius", cc.body_radius},
                       {"max_speed", cc.max_speed},     {"max_yaw_rate", cc.max_yaw_rate}};
  j["waypoints"] = {{"reach_radius", c.waypoints.reach_radius},
                    {"stay_duration", c.waypoints.stay_duration},
                    {"preset_offset", c.waypoints.preset_offset}};
  auto& t = j["task"];
  t["robots"] = c.task.robots;
  if (c.task.time_limit) t["time_limit"] = *c.task.time_limit;
  t["dt"] = c.task.dt;
  t["with_obstacles"] = c.task.with_obstacles;
  t["arena"] = c.task.arena == OmniArena::Flat ? "flat" : "terrain";
  t["arena_size"] = c.task.arena_size;
  t["arena_units"] = c.task.arena_units;
  t["success_distance"] = c.task.success_distance;
  t["dwell"] = c.task.dwell;
  t["heatmap_cell"] = c.task.heatmap_cell;
  t["parallel"] = c.task.parallel;
  auto& p = j["planner"];
  p["backend"] = c.planner_spec;
  p["heuristic"] = c.planner.heuristic == Heuristic::Octile ? "octile" : "euclidean";
  p["cell"] = c.planner.cell;
  p["inflation"] = c.planner.inflation;
  p["wall_only"] = c.planner.wall_only;
  p["min_gap"] = c.planner.min_gap;
  p["max_gap"] = c.planner.max_gap;
  p["retries"] = c.planner.llm_retries;
  auto& n = j["navigate"];
  if (c.navigate.start) {
    n["start"] = {c.navigate.start->position.x, c.navigate.start->position.y, c.navigate.start->yaw};
  }
  if (c.navigate.goal) n["goal"] = {c.navigate.goal->x, c.navigate.goal->y};
  n["time_limit"] = c.navigate.time_limit;
  n["dwell"] = c.navigate.dwell;
  j["output"] = {{"dir", c.output_dir}};
  return j;
}

/// Terrain described by the scenario block.
inline TerrainGrid build_scenario(const RunConfig& c) {
  const auto& s = c.scenario;
  if (s.type == "wp_fixed") {
    std::vector<double> diff = s.difficulty;
    if (diff.size() == 1) diff.assign(static_cast<std::size_t>(s.rows), diff.front());
    return generate_wp_fixed(s.rows, s.cols, s.kinds, diff, c.seed, s.terrain);
  }
  if (s.type == "wp_random") {
    return generate_wp_random(s.rows, s.cols, s.difficulty.front(), c.seed, s.terrain, c.capabilities);
  }
  return generate_layout(s.layout, s.difficulty.front(), c.seed, s.terrain, s.walls, s.params);
}

}  // namespace wpnav
