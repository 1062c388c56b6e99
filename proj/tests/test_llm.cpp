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

#include "wpnav/llm.hpp"
#include "wpnav/navigation.hpp"

using namespace wpnav;

namespace {

std::string fixture(const std::string& name) { return std::string(WPNAV_FIXTURES) + "/" + name; }

class RecordingBackend : public ChatBackend {
 public:
  explicit RecordingBackend(std::vector<std::string> rs) : replay_(std::move(rs)) {}
  std::string complete(const std::vector<ChatMessage>& m) override {
    seen.push_back(m);
    return replay_.complete(m);
  }
  std::vector<std::vector<ChatMessage>> seen;

 private:
  ReplayBackend replay_;
};

UnitGridView small_view() {
  UnitGridView v;
  v.rows = 2;
  v.cols = 3;
  v.unit_size = 2.0;
  v.codes = {'F', 'G', 'F', 'F', 'B', 'W'};
  v.params = {0.0, 0.6, 0.0, 0.0, 0.25, 0.0};
  return v;
}

std::shared_ptr<const TerrainGrid> course() {
  const std::vector<std::string> layout{"FFFFF", "FHBGF", "FFFFF"};
  const std::vector<UnitParamOverride> wide{{1, 3, 0.6}};
  return std::make_shared<const TerrainGrid>(generate_layout(layout, 0.5, 5, {}, {}, wide));
}

}  // namespace

TEST(Prompt, SectionsInOrder) {
  const std::string p = build_llm_prompt("Go.", small_view(), "caps here", {0, 0}, {1, 2});
  const auto task = p.find("## Task");
  const auto map = p.find("## Map");
  const auto caps = p.find("## Locomotion capabilities");
  const auto legend = p.find("## Terrain descriptions");
  const auto def = p.find("## Waypoint definition");
  ASSERT_NE(task, std::string::npos);
  EXPECT_LT(task, map);
  EXPECT_LT(map, caps);
  EXPECT_LT(caps, legend);
  EXPECT_LT(legend, def);
  EXPECT_NE(p.find("```grid\nF0.00 G0.60 F0.00\nF0.00 B0.25 W0.00\n```"), std::string::npos);
  EXPECT_NE(p.find("unit (0,0) and must reach unit (1,2)"), std::string::npos);
  EXPECT_NE(p.find("caps here"), std::string::npos);
}

TEST(Prompt, CapabilitiesText) {
  const std::string s = describe_capabilities({});
  EXPECT_NE(s.find("0.35 m high"), std::string::npos);
  EXPECT_NE(s.find("0.30 m high"), std::string::npos);
  EXPECT_NE(s.find("gaps up to 0.35 m"), std::string::npos);
}

TEST(Parse, LastFencedBlockWins) {
  const std::string answer =
      "Draft:\n```waypoints\n(0,0)\n```\nFinal:\n```waypoints\n(0, 1)\n  (1,2)\n```\n";
  const auto w = parse_llm_waypoints(answer, 2, 3, 2.0);
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(w[0].unit_index, (UnitIndexPair{0, 1}));
  EXPECT_EQ(w[0].position, (Vec2{3.0, 1.0}));
  EXPECT_EQ(w[1].position, (Vec2{5.0, 3.0}));
  EXPECT_EQ(w[1].id, 1);
}

TEST(Parse, RoundTripsFormattedBlock) {
  const std::vector<UnitIndexPair> idx{{0, 0}, {1, 1}, {1, 2}};
  const auto w = parse_llm_waypoints("ok\n" + format_waypoint_block(idx), 2, 3, 2.0);
  ASSERT_EQ(w.size(), idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) EXPECT_EQ(w[i].unit_index, idx[i]);
}

TEST(Parse, Rejections) {
  EXPECT_THROW(parse_llm_waypoints("no block (0,0)", 2, 3, 2.0), ParseError);
  EXPECT_THROW(parse_llm_waypoints("```\nnothing\n```", 2, 3, 2.0), ParseError);
  EXPECT_THROW(parse_llm_waypoints("```\n(2,0)\n```", 2, 3, 2.0), IndexOutOfRange);
  EXPECT_THROW(parse_llm_waypoints("```\n(0,-1)\n```", 2, 3, 2.0), IndexOutOfRange);
}

TEST(Replay, FixtureAndExhaustion) {
  ReplayBackend b = ReplayBackend::from_file(fixture("ok.json"));
  const std::string r = b.complete({});
  EXPECT_NE(r.find("```waypoints"), std::string::npos);
  EXPECT_EQ(b.calls(), 1u);
  EXPECT_THROW(b.complete({}), BackendError);
  EXPECT_THROW(ReplayBackend::from_file(fixture("missing.json")), BackendError);
  EXPECT_THROW(ReplayBackend::from_file(fixture("maze.json")), BackendError);
}

TEST(LlmPlan, RetriesWithDiagnostic) {
  ReplayBackend src = ReplayBackend::from_file(fixture("retry_ok.json"));
  std::vector<std::string> rs{src.complete({}), src.complete({})};
  RecordingBackend b(rs);
  LlmRequest req;
  req.view = UnitGridView::from(*course());
  req.capabilities_text = describe_capabilities({});
  req.start = {1, 0};
  req.goal = {1, 4};
  LlmTranscript t;
  const auto w = llm_plan(req, b, 2, &t);
  EXPECT_EQ(w.size(), 6u);
  EXPECT_EQ(t.responses.size(), 2u);
  EXPECT_EQ(t.diagnostics.size(), 1u);
  ASSERT_EQ(b.seen.size(), 2u);
  EXPECT_EQ(b.seen[0].size(), 2u);
  EXPECT_EQ(b.seen[1].size(), 4u);
  EXPECT_EQ(b.seen[1][2].role, "assistant");
  EXPECT_NE(b.seen[1][3].content.find("no fenced answer block"), std::string::npos);
  EXPECT_EQ(b.seen[0][1].content, t.prompt);
}

TEST(LlmPlan, MalformedExhaustsRetries) {
  ReplayBackend b = ReplayBackend::from_file(fixture("malformed.json"));
  LlmRequest req;
  req.view = small_view();
  LlmTranscript t;
  EXPECT_THROW(llm_plan(req, b, 2, &t), ParseError);
  EXPECT_EQ(t.responses.size(), 3u);
  EXPECT_EQ(t.diagnostics.size(), 3u);
  EXPECT_FALSE(t.prompt.empty());
}

TEST(Hierarchical, ReplayRouteAvoidsWideGap) {
  auto grid = course();
  ReplayBackend b = ReplayBackend::from_file(fixture("ok.json"));
  PlannerConfig cfg;
  cfg.backend = PlannerBackend::Llm;
  NavigationGoal nav;
  nav.start = {{1.0, 3.0}, 0.0};
  nav.goal = {9.0, 3.0};
  const ScriptedPolicy policy(*grid);
  const NavigationResult r = run_hierarchical(grid, {}, nav, cfg, policy, &b);
  EXPECT_EQ(r.log.outcome, Outcome::Success);
  EXPECT_TRUE(r.transcript.has_value());
  EXPECT_EQ(r.waypoints.size(), 6u);
}

TEST(Hierarchical, StraightRouteFallsIntoGap) {
  auto grid = course();
  ReplayBackend b = ReplayBackend::from_file(fixture("gap_bad_case.json"));
  PlannerConfig cfg;
  cfg.backend = PlannerBackend::Llm;
  NavigationGoal nav;
  nav.start = {{1.0, 3.0}, 0.0};
  nav.goal = {9.0, 3.0};
  const ScriptedPolicy policy(*grid);
  const NavigationResult r = run_hierarchical(grid, {}, nav, cfg, policy, &b);
  EXPECT_EQ(r.log.outcome, Outcome::Failed);
  ASSERT_FALSE(r.log.events.empty());
  EXPECT_EQ(r.log.events.front().kind, EventKind::Fell);
}

TEST(Hierarchical, LlmNeedsBackend) {
  auto grid = course();
  PlannerConfig cfg;
  cfg.backend = PlannerBackend::Llm;
  NavigationGoal nav;
  nav.start = {{1.0, 3.0}, 0.0};
  nav.goal = {9.0, 3.0};
  EXPECT_ANY_THROW(plan_waypoints(*grid, {}, nav, cfg, nullptr, nullptr));
}
