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


// wpnav command-line front end: terrain generation, evaluation tasks,
// hierarchical navigation and metric replay.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wpnav/config.hpp"
#include "wpnav/llm_http.hpp"
#include "wpnav/wpnav.hpp"

namespace fs = std::filesystem;
using namespace wpnav;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string run_name;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("-c,--config", o.config, "JSON run configuration")->required();
  cmd->add_option("--seed", o.seed, "Override the configured seed");
  cmd->add_option("--out", o.out, "Override the output directory");
  cmd->add_option("--run-name", o.run_name, "Run directory name (default: timestamp and seed)");
}

RunConfig load(const CommonOptions& o) {
  RunConfig cfg = load_config(o.config);
  if (o.seed) cfg.seed = *o.seed;
  if (!o.out.empty()) cfg.output_dir = o.out;
  return cfg;
}

fs::path make_run_dir(const RunConfig& cfg, const std::string& run_name) {
  std::string name = run_name;
  if (name.empty()) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[64];
    std::strftime(buf, sizeof buf, "%Y%m%d-%H%M%S", &tm);
    name = std::string(buf) + "-seed" + std::to_string(cfg.seed);
  }
  const fs::path dir = fs::path(cfg.output_dir) / name;
  fs::create_directories(dir);
  std::ofstream(dir / "config.json") << to_json(cfg).dump(2) << '\n';
  return dir;
}

std::ofstream open_out(const fs::path& p, bool binary = false) {
  std::ofstream f(p, binary ? std::ios::binary : std::ios::out);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  return f;
}

std::vector<double> parse_numbers(const std::string& s, const char* what, std::size_t lo, std::size_t hi) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(std::string(what) + ": '" + s + "' is not a comma-separated number list");
    }
  }
  if (out.size() < lo || out.size() > hi) throw ConfigError(std::string(what) + ": wrong number of values");
  return out;
}

int cmd_generate(const CommonOptions& co, bool text) {
  const RunConfig cfg = load(co);
  const TerrainGrid grid = build_scenario(cfg);
  const fs::path dir = make_run_dir(cfg, co.run_name);

  auto hf = open_out(dir / "heightfield.bin", true);
  write_heightfield_binary(hf, grid.heightfield());
  if (text) {
    auto ht = open_out(dir / "heightfield.txt");
    write_heightfield_text(ht, grid.heightfield());
  }
  auto occ = open_out(dir / "occupancy.txt");
  write_occupancy(occ, to_occupancy(grid, cfg.planner.cell, cfg.planner.wall_only));

  auto wp = open_out(dir / "waypoints.txt");
  if (grid.scenario() == Scenario::WPFixed) {
    const auto tracks = preset_fixed_waypoints(grid, cfg.waypoints);
    const int per_row = grid.unit_cols() / kTrackUnits;
    for (std::size_t k = 0; k < tracks.size(); ++k) {
      wp << "# track " << k / per_row << ' ' << k % per_row << '\n';
      write_waypoints(wp, tracks[k]);
    }
  } else {
    wp << "# waypoints are sampled online for this scenario\n";
  }

  const TerrainSummary s = summarize(grid);
  std::ostringstream sum;
  sum << "scenario " << cfg.scenario.type << '\n'
      << "units " << s.units << '\n';
  if (grid.scenario() == Scenario::WPFixed) sum << "tracks " << s.tracks << '\n';
  for (const auto& [kind, n] : s.per_kind) sum << "kind " << to_string(kind) << ' ' << n << '\n';
  char buf[96];
  std::snprintf(buf, sizeof buf, "difficulty %.3f %.3f\n", s.min_difficulty, s.max_difficulty);
  sum << buf << "run_dir " << dir.string() << '\n';
  open_out(dir / "summary.txt") << sum.str();
  std::cout << sum.str();
  return kExitOk;
}

void write_logs(const fs::path& dir, const std::vector<EpisodeLog>& logs) {
  fs::create_directories(dir / "robots");
  for (const auto& log : logs) {
    char name[32];
    std::snprintf(name, sizeof name, "robot_%02d.csv", log.robot);
    auto f = open_out(dir / "robots" / name);
    write_episode_csv(f, log);
  }
}

struct EvalOverrides {
  std::string task;
  bool with_obstacles = false;
  std::string arena;
  std::optional<int> robots;
  std::optional<double> time_limit;
  std::optional<int> parallel;
};

int cmd_eval(const CommonOptions& co, const EvalOverrides& ov) {
  RunConfig cfg = load(co);
  if (ov.with_obstacles) cfg.task.with_obstacles = true;
  if (!ov.arena.empty()) cfg.task.arena = ov.arena == "flat" ? OmniArena::Flat : OmniArena::Terrain;
  if (ov.robots) cfg.task.robots = *ov.robots;
  if (ov.time_limit) cfg.task.time_limit = *ov.time_limit;
  if (ov.parallel) cfg.task.parallel = *ov.parallel;
  if (cfg.task.robots < 1 || cfg.task.parallel < 1) throw ConfigError("robots and parallel must be at least 1");

  TaskSpec task;
  if (ov.task == "single") {
    SingleTraverseOptions o;
    o.robots = cfg.task.robots;
    o.time_limit = cfg.task.time_limit.value_or(30.0);
    o.with_obstacles = cfg.task.with_obstacles;
    o.seed = cfg.seed;
    o.dwell = cfg.task.dwell;
    o.reach_radius = cfg.waypoints.reach_radius;
    o.terrain = cfg.scenario.terrain;
    task = make_single_traverse(o);
  } else {
    OmniTraverseOptions o;
    o.robots = cfg.task.robots;
    o.time_limit = cfg.task.time_limit.value_or(16.0);
    o.success_distance = cfg.task.success_distance;
    o.arena_size = cfg.task.arena_size;
    o.arena_units = cfg.task.arena_units;
    o.arena = cfg.task.arena;
    o.with_obstacles = cfg.task.with_obstacles;
    o.seed = cfg.seed;
    o.dwell = cfg.task.dwell;
    o.reach_radius = cfg.waypoints.reach_radius;
    o.resolution = cfg.scenario.terrain.resolution;
    task = make_omni_traverse(o);
  }
  task.dt = cfg.task.dt;
  task.reward = cfg.reward;
  const fs::path dir = make_run_dir(cfg, co.run_name);

  const ScriptedPolicy policy(*task.arena, cfg.capabilities, ControllerConfig{3.0, cfg.waypoints.reach_radius, 0.5},
                              cfg.reward);
  const auto logs = run_task(task, policy, cfg.task.parallel);
  const Metrics m = compute_metrics(logs, task.time_limit);

  write_logs(dir, logs);
  {
    auto f = open_out(dir / "results.csv");
    write_results_header(f);
    write_results_row(f, to_string(task.kind), task.variant, m);
  }
  const Heatmap h = accumulate_heatmap(logs, cfg.task.heatmap_cell, task.arena->bounds());
  {
    auto f = open_out(dir / "heatmap.txt");
    write_heatmap_text(f, h);
    auto g = open_out(dir / "heatmap.pgm", true);
    write_heatmap_pgm(g, h);
  }
  {
    nlohmann::ordered_json meta = {{"task", to_string(task.kind)},
                                   {"variant", task.variant},
                                   {"time_limit", task.time_limit},
                                   {"robots", static_cast<int>(logs.size())}};
    open_out(dir / "run.json") << meta.dump(2) << '\n';
  }
  write_results_header(std::cout);
  write_results_row(std::cout, to_string(task.kind), task.variant, m);
  std::cout << "run_dir " << dir.string() << '\n';
  return kExitOk;
}

struct NavigateOverrides {
  std::string start;
  std::string goal;
  std::string planner;
};

void write_transcript(const fs::path& dir, const LlmTranscript& t) {
  open_out(dir / "prompt.txt") << t.prompt;
  auto f = open_out(dir / "responses.txt");
  for (std::size_t i = 0; i < t.responses.size(); ++i) {
    f << "=== response " << i << " ===\n" << t.responses[i] << '\n';
    if (i < t.diagnostics.size()) f << "=== diagnostic " << i << " ===\n" << t.diagnostics[i] << '\n';
  }
}

int cmd_navigate(const CommonOptions& co, const NavigateOverrides& ov) {
  RunConfig cfg = load(co);
  if (!ov.planner.empty()) {
    // Re-validate the backend string through the config parser.
    auto j = to_json(cfg);
    j["planner"]["backend"] = ov.planner;
    cfg = parse_config(j.dump());
  }
  if (!ov.start.empty()) {
    const auto s = parse_numbers(ov.start, "--start", 2, 3);
    cfg.navigate.start = Pose2{{s[0], s[1]}, s.size() == 3 ? s[2] : 0.0};
  }
  if (!ov.goal.empty()) {
    const auto g = parse_numbers(ov.goal, "--goal", 2, 2);
    cfg.navigate.goal = Vec2{g[0], g[1]};
  }
  if (!cfg.navigate.start || !cfg.navigate.goal) throw ConfigError("navigate needs a start and a goal");

  // Backend setup happens before any terrain or episode work.
  std::unique_ptr<ChatBackend> chat;
  if (cfg.planner.backend == PlannerBackend::Llm) {
    if (!cfg.replay_file.empty()) {
      // Relative fixture paths are tried from the working directory, then
      // next to the config file.
      fs::path replay = cfg.replay_file;
      const fs::path beside = fs::path(co.config).parent_path() / replay;
      if (replay.is_relative() && !fs::exists(replay) && fs::exists(beside)) replay = beside;
      chat = std::make_unique<ReplayBackend>(ReplayBackend::from_file(replay.string()));
    } else {
      chat = std::make_unique<HttpChatBackend>(HttpChatBackend::from_env());
    }
  }

  auto grid = std::make_shared<const TerrainGrid>(build_scenario(cfg));
  if (!grid->contains(cfg.navigate.start->position) || !grid->contains(*cfg.navigate.goal)) {
    throw ConfigError("start or goal lies outside the terrain");
  }
  const fs::path dir = make_run_dir(cfg, co.run_name);

  NavigationGoal nav;
  nav.start = *cfg.navigate.start;
  nav.goal = *cfg.navigate.goal;
  nav.time_limit = cfg.navigate.time_limit;
  nav.dwell = cfg.navigate.dwell;
  nav.reach_radius = cfg.waypoints.reach_radius;
  const ScriptedPolicy policy(*grid, cfg.capabilities, ControllerConfig{3.0, cfg.waypoints.reach_radius, 0.5},
                              cfg.reward);

  NavigationResult detail;
  std::vector<Waypoint> wps;
  try {
    wps = plan_waypoints(*grid, cfg.capabilities, nav, cfg.planner, chat.get(), &detail);
  } catch (...) {
    if (detail.transcript) write_transcript(dir, *detail.transcript);
    throw;
  }
  if (detail.transcript) write_transcript(dir, *detail.transcript);
  {
    auto f = open_out(dir / "waypoints.txt");
    write_waypoints(f, wps);
  }

  TaskSpec task;
  task.kind = TaskKind::Hierarchical;
  task.variant = cfg.planner_spec;
  task.arena = grid;
  task.robots = {RobotPlan{nav.start, wps}};
  task.time_limit = nav.time_limit;
  task.dt = cfg.task.dt;
  task.success = {SuccessRule::Kind::AllWaypoints, 0.0};
  task.dwell = nav.dwell;
  task.reach_radius = nav.reach_radius;
  task.reinit_on_failure = false;
  task.reward = cfg.reward;
  const EpisodeLog log = run_episode(task, 0, policy);
  {
    auto f = open_out(dir / "episode.csv");
    write_episode_csv(f, log);
  }

  std::cout << "planner " << cfg.planner_spec << '\n' << "waypoints " << wps.size() << '\n';
  for (const auto& e : log.events) std::printf("event %s %.2f\n", to_string(e.kind), e.t);
  std::printf("outcome %s\n", to_string(log.outcome));
  if (log.success_time) std::printf("success_time %.2f\n", *log.success_time);
  std::cout << "run_dir " << dir.string() << '\n';
  return kExitOk;
}

int cmd_replay_metrics(const std::string& run) {
  const fs::path dir(run);
  std::ifstream meta_in(dir / "run.json");
  if (!meta_in) throw ConfigError("no run.json in " + run);
  nlohmann::json meta;
  try {
    meta_in >> meta;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("run.json: ") + e.what());
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir / "robots")) {
    if (e.path().extension() == ".csv") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<EpisodeLog> logs;
  for (const auto& p : files) {
    std::ifstream in(p);
    logs.push_back(read_episode_csv(in, static_cast<int>(logs.size())));
  }
  const Metrics m = compute_metrics(logs, meta.at("time_limit").get<double>());
  write_results_header(std::cout);
  write_results_row(std::cout, meta.at("task").get<std::string>(), meta.at("variant").get<std::string>(), m);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Waypoint navigation toolkit"};
  app.require_subcommand(1);

  CommonOptions gen_opts;
  bool gen_text = false;
  auto* gen = app.add_subcommand("generate", "Generate terrain, occupancy map and preset waypoints");
  add_common(gen, gen_opts);
  gen->add_flag("--text", gen_text, "Also write the heightfield as text");

  CommonOptions eval_opts;
  EvalOverrides eval_ov;
  auto* ev = app.add_subcommand("eval", "Run an evaluation task");
  ev->add_option("task", eval_ov.task, "single or omni")->required()->check(CLI::IsMember({"single", "omni"}));
  add_common(ev, eval_opts);
  ev->add_flag("--with-obstacles", eval_ov.with_obstacles, "Add high obstacles to the arena");
  ev->add_option("--arena", eval_ov.arena, "Omni arena: flat or terrain")->check(CLI::IsMember({"flat", "terrain"}));
  ev->add_option("--robots", eval_ov.robots, "Number of robots");
  ev->add_option("--time-limit", eval_ov.time_limit, "Episode time limit, seconds");
  ev->add_option("--parallel", eval_ov.parallel, "Worker threads");

  CommonOptions nav_opts;
  NavigateOverrides nav_ov;
  auto* nav = app.add_subcommand("navigate", "Plan waypoints and run one robot to the goal");
  add_common(nav, nav_opts);
  nav->add_option("--start", nav_ov.start, "x,y[,yaw]");
  nav->add_option("--goal", nav_ov.goal, "x,y");
  nav->add_option("--planner", nav_ov.planner, "astar, dijkstra, llm or replay:<file>");

  std::string replay_run;
  auto* rm = app.add_subcommand("replay-metrics", "Recompute metrics from stored episode logs");
  rm->add_option("run", replay_run, "Run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_opts, gen_text);
    if (ev->parsed()) return cmd_eval(eval_opts, eval_ov);
    if (nav->parsed()) return cmd_navigate(nav_opts, nav_ov);
    if (rm->parsed()) return cmd_replay_metrics(replay_run);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
