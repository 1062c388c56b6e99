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

#include <cstdio>
#include <fstream>
#include <memory>
#include <regex>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "wpnav/capabilities.hpp"
#include "wpnav/errors.hpp"
#include "wpnav/terrain.hpp"
#include "wpnav/waypoint.hpp"

namespace wpnav {

using UnitIndexPair = std::pair<int, int>;  // (row, col)

// Coarse per-unit view of a terrain grid: kind code plus its main parameter.
struct UnitGridView {
  int rows = 0;
  int cols = 0;
  double unit_size = 2.0;
  std::vector<char> codes;
  std::vector<double> params;

  static UnitGridView from(const TerrainGrid& grid) {
    UnitGridView v;
    v.rows = grid.unit_rows();
    v.cols = grid.unit_cols();
    v.unit_size = grid.unit_size();
    for (const auto& u : grid.units()) {
      v.codes.push_back(unit_code(u.kind));
      v.params.push_back(u.param);
    }
    return v;
  }
};

inline std::string describe_capabilities(const RobotCapabilities& caps) {
  char buf[400];
  std::snprintf(buf, sizeof buf,
                "The robot can climb onto boxes up to %.2f m high and step over hurdles up to "
                "%.2f m high. It can jump across gaps up to %.2f m wide. It walks around high "
                "obstacles on its own but cannot pass walls.",
                caps.max_climb, caps.max_hurdle, caps.max_gap);
  return buf;
}

// One line per unit row, row 0 first; cells are `<code><param>`.
inline std::string render_unit_grid(const UnitGridView& view) {
  std::string out;
  char cell[32];
  for (int r = 0; r < view.rows; ++r) {
    for (int c = 0; c < view.cols; ++c) {
      const auto k = static_cast<std::size_t>(r * view.cols + c);
      std::snprintf(cell, sizeof cell, "%c%.2f", view.codes[k], view.params[k]);
      if (c) out += ' ';
      out += cell;
    }
    out += '\n';
  }
  return out;
}

/// Planner prompt with five sections in fixed order: task, coarse map,
/// locomotion capabilities, terrain legend, waypoint definition.
inline std::string build_llm_prompt(const std::string& task, const UnitGridView& view,
                                    const std::string& caps_text, UnitIndexPair start,
                                    UnitIndexPair goal) {
  if (view.rows < 1 || view.cols < 1) throw InvalidArgument("unit grid is empty");
  std::ostringstream p;
  p << "## Task\n"
    << task << "\n"
    << "The robot starts in unit (" << start.first << "," << start.second
    << ") and must reach unit (" << goal.first << "," << goal.second << ").\n\n";
  p << "## Map\n"
    << "The terrain is a grid of " << view.rows << " rows by " << view.cols
    << " columns of square units, each " << view.unit_size << " m wide. Row 0 is listed first "
    << "and columns run left to right. Each cell gives a terrain code followed by its key "
       "dimension in meters.\n"
    << "```grid\n"
    << render_unit_grid(view) << "```\n\n";
  p << "## Locomotion capabilities\n" << caps_text << "\n\n";
  p << "## Terrain descriptions\n"
    << "F: flat ground.\n"
    << "H: hurdle bar across the unit; the number is its height.\n"
    << "B: raised box in the middle of the unit; the number is its height.\n"
    << "G: gap (trench) across the unit; the number is its width.\n"
    << "O: high obstacles scattered in the unit that must be walked around; the number is the "
       "largest obstacle size.\n"
    << "W: wall, impassable.\n\n";
  p << "## Waypoint definition\n"
    << "A waypoint is a terrain unit index written as (row,col). The robot walks to the center "
       "of each waypoint unit in order. The last waypoint must be the goal unit. Reason step by "
       "step about which units the robot can cross, then end your reply with the waypoints in a "
       "fenced block, one per line:\n"
    << "```waypoints\n(row,col)\n(row,col)\n```\n";
  return p.str();
}

inline std::string format_waypoint_block(const std::vector<UnitIndexPair>& indices) {
  std::string out = "```waypoints\n";
  for (auto [r, c] : indices) out += "(" + std::to_string(r) + "," + std::to_string(c) + ")\n";
  out += "```\n";
  return out;
}

inline Vec2 unit_center(UnitIndexPair idx, double unit_size) {
  return {(idx.second + 0.5) * unit_size, (idx.first + 0.5) * unit_size};
}

/// Extracts (row, col) pairs from the last fenced block of an answer and maps
/// each to its unit center. No feasibility repair is attempted: a waypoint
/// inside a hazard is passed through as given.
inline std::vector<Waypoint> parse_llm_waypoints(const std::string& response, int rows, int cols,
                                                 double unit_size) {
  std::vector<std::string> blocks;
  {
    std::istringstream is(response);
    std::string line;
    bool inside = false;
    std::string cur;
    while (std::getline(is, line)) {
      const auto first = line.find_first_not_of(" \t");
      const bool fence = first != std::string::npos && line.compare(first, 3, "```") == 0;
      if (fence) {
        if (inside) blocks.push_back(cur);
        inside = !inside;
        cur.clear();
      } else if (inside) {
        cur += line + '\n';
      }
    }
  }
  if (blocks.empty()) throw ParseError("no fenced answer block found");

  static const std::regex kPair(R"(\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))");
  const std::string& block = blocks.back();
  std::vector<Waypoint> out;
  for (auto it = std::sregex_iterator(block.begin(), block.end(), kPair); it != std::sregex_iterator();
       ++it) {
    const int r = std::stoi((*it)[1].str());
    const int c = std::stoi((*it)[2].str());
    if (r < 0 || r >= rows || c < 0 || c >= cols) {
      throw IndexOutOfRange(r, c, "waypoint (" + std::to_string(r) + "," + std::to_string(c) +
                                      ") is outside the " + std::to_string(rows) + "x" +
                                      std::to_string(cols) + " unit grid");
    }
    Waypoint w;
    w.unit_index = UnitIndexPair{r, c};
    w.position = unit_center({r, c}, unit_size);
    w.id = static_cast<int>(out.size());
    out.push_back(w);
  }
  if (out.empty()) throw ParseError("answer block contains no (row,col) waypoints");
  return out;
}

struct ChatMessage {
  std::string role;
  std::string content;
};

// Generic chat-completion client.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual std::string complete(const std::vector<ChatMessage>& messages) = 0;
};

// Plays back canned answers in order. Fixture files are JSON objects with a
// "responses" array of strings.
class ReplayBackend : public ChatBackend {
 public:
  explicit ReplayBackend(std::vector<std::string> responses) : responses_(std::move(responses)) {}

  static ReplayBackend from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BackendError("replay fixture not found: " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw BackendError("replay fixture " + path + " is not valid JSON: " + e.what());
    }
    if (!j.is_object() || !j.contains("responses") || !j["responses"].is_array()) {
      throw BackendError("replay fixture " + path + " needs a \"responses\" array");
    }
    std::vector<std::string> rs;
    for (const auto& r : j["responses"]) {
      if (!r.is_string()) throw BackendError("replay fixture " + path + ": responses must be strings");
      rs.push_back(r.get<std::string>());
    }
    return ReplayBackend(std::move(rs));
  }

  std::string complete(const std::vector<ChatMessage>&) override {
    if (next_ >= responses_.size()) throw BackendError("replay fixture exhausted");
    return responses_[next_++];
  }

  std::size_t calls() const { return next_; }

 private:
  std::vector<std::string> responses_;
  std::size_t next_ = 0;
};

struct LlmRequest {
  std::string task = "Guide the quadruped robot to the goal unit across the terrain.";
  UnitGridView view;
  std::string capabilities_text;
  UnitIndexPair start;
  UnitIndexPair goal;
};

struct LlmTranscript {
  std::string prompt;
  std::vector<std::string> responses;
  std::vector<std::string> diagnostics;
};

/// Prompt, ask, parse. An unparseable answer is re-asked up to `retries`
/// times with the parser diagnostic appended. `transcript`, when given,
/// receives the prompt and every raw response even if planning fails.
inline std::vector<Waypoint> llm_plan(const LlmRequest& req, ChatBackend& backend, int retries = 2,
                                      LlmTranscript* transcript = nullptr) {
  LlmTranscript local;
  LlmTranscript& log = transcript ? *transcript : local;
  log.prompt = build_llm_prompt(req.task, req.view, req.capabilities_text, req.start, req.goal);
  std::vector<ChatMessage> messages = {
      {"system", "You are the high-level navigation planner for a quadruped robot."},
      {"user", log.prompt}};
  for (int attempt = 0;; ++attempt) {
    std::string answer = backend.complete(messages);
    log.responses.push_back(answer);
    try {
      return parse_llm_waypoints(answer, req.view.rows, req.view.cols, req.view.unit_size);
    } catch (const std::exception& e) {
      log.diagnostics.push_back(e.what());
      if (attempt >= retries) {
        throw ParseError("no usable waypoints after " + std::to_string(attempt + 1) +
                         " answers: " + e.what());
      }
      messages.push_back({"assistant", std::move(answer)});
      messages.push_back({"user", std::string("Your answer could not be used: ") + e.what() +
                                      ". Reply again and end with a fenced waypoints block."});
    }
  }
}

}  // namespace wpnav
