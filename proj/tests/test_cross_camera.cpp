// Copyright 2026 The vastream Authors. All Rights Reserved.
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
#include <random>

#include "vastream/cross_camera.hpp"
#include "vastream/error.hpp"
#include "vastream/scenario.hpp"

namespace vastream {
namespace {

Visit visit(std::string object, std::string camera, double enter, double exit, int dir = 0) {
  return Visit{std::move(object), std::move(camera), enter, exit, dir};
}

// 10 objects at s, 7 of them later at d with transits 1, 2, 2.5, 3, 3.5, 3.8, 4.
TrajectoryLog ten_objects() {
  const double transit[] = {1.0, 2.0, 2.5, 3.0, 3.5, 3.8, 4.0};
  std::vector<Visit> v;
  for (int o = 0; o < 10; ++o) {
    const std::string id = "o" + std::to_string(o);
    v.push_back(visit(id, "s", 10.0 * o, 10.0 * o + 1.0, 2));
    if (o < 7) v.push_back(visit(id, "d", 10.0 * o + 1.0 + transit[o], 10.0 * o + 8.0));
  }
  return TrajectoryLog(std::move(v));
}

TEST(Spatial, Examples) {
  const TrajectoryLog log = ten_objects();
  EXPECT_DOUBLE_EQ(spatial_correlation(log, "s", "d"), 0.7);
  EXPECT_DOUBLE_EQ(spatial_correlation(log, "s", "x"), 0.0);
  EXPECT_DOUBLE_EQ(spatial_correlation(log, "d", "s"), 0.0);  // s is never visited after d
  EXPECT_THROW(spatial_correlation(log, "x", "s"), InvalidArgument);

  const TrajectoryLog both({visit("a", "s", 0, 1), visit("a", "d", 2, 3), visit("b", "s", 0, 1),
                            visit("b", "d", 5, 6)});
  EXPECT_DOUBLE_EQ(spatial_correlation(both, "s", "d"), 1.0);
}

TEST(Spatial, LaterVisitCountsNotOnlyTheNext) {
  const TrajectoryLog log({visit("a", "s", 0, 1), visit("a", "m", 2, 3), visit("a", "d", 4, 5)});
  EXPECT_DOUBLE_EQ(spatial_correlation(log, "s", "d"), 1.0);
  // consecutive visits only for transit times
  EXPECT_TRUE(transit_times(log, "s", "d").empty());
}

TEST(Temporal, Examples) {
  const TrajectoryLog log = ten_objects();
  EXPECT_EQ(transit_times(log, "s", "d").size(), 7u);
  EXPECT_NEAR(temporal_correlation(log, "s", "d", 2.0, 4.0), 6.0 / 7.0, 1e-12);
  EXPECT_NEAR(temporal_correlation(log, "s", "d", 2.0, 4.0), 0.8571, 1e-4);
  EXPECT_DOUBLE_EQ(temporal_correlation(log, "s", "d", 0.0), 1.0);
  EXPECT_DOUBLE_EQ(temporal_correlation(log, "d", "s", 0.0), 0.0);
}

TEST(Temporal, MonotoneInWindow) {
  const TrajectoryLog log = camera_fixture();
  double prev = 0.0;
  for (double w = 0.0; w <= 2.0; w += 0.25) {
    const double t = temporal_correlation(log, "A", "C", 2.7 - w, 2.7 + w);
    EXPECT_GE(t, prev);
    EXPECT_GE(t, 0.0);
    EXPECT_LE(t, 1.0);
    prev = t;
  }
}

TEST(Fixture, QuotedPercentages) {
  const TrajectoryLog log = camera_fixture();
  EXPECT_NEAR(spatial_correlation(log, "A", "C"), 0.883, 1e-12);
  EXPECT_NEAR(spatial_correlation(log, "C", "A"), 0.178, 1e-3);
  const auto t = transit_times(log, "A", "C");
  double mean = 0.0;
  for (double x : t) mean += x;
  EXPECT_NEAR(mean / static_cast<double>(t.size()), 2.7, 0.05);
}

TEST(Select, FixtureEmitsAToCOnly) {
  SelectOptions opt;
  opt.grid_rows = 24;
  opt.grid_cols = 40;
  const TrajectoryLog log = camera_fixture();
  const auto to_c = select_sources(log, "C", opt);
  ASSERT_EQ(to_c.size(), 1u);
  EXPECT_EQ(to_c[0].source, "A");
  EXPECT_NEAR(to_c[0].spatial, 0.883, 1e-12);
  EXPECT_GE(to_c[0].temporal, 0.9);
  EXPECT_LE(to_c[0].t1, 2.7);
  EXPECT_GE(to_c[0].t2, 2.7);
  EXPECT_TRUE(select_sources(log, "A", opt).empty());
  EXPECT_TRUE(select_sources(TrajectoryLog(), "C", opt).empty());
}

TEST(ExitPoint, Sectors) {
  int r = 0;
  int c = 0;
  sector_exit_point(0, 10, 20, r, c);  // +x: right edge, middle row
  EXPECT_EQ(c, 19);
  EXPECT_EQ(r, 5);
  sector_exit_point(2, 10, 20, r, c);  // +y is down in image coordinates
  EXPECT_EQ(r, 9);
  sector_exit_point(4, 10, 20, r, c);
  EXPECT_EQ(c, 0);
  sector_exit_point(6, 10, 20, r, c);
  EXPECT_EQ(r, 0);
}

ShareRule rule_at(int row, int col, int dir) {
  ShareRule r;
  r.exit_row = row;
  r.exit_col = col;
  r.direction = dir;
  return r;
}

TEST(Filter, HandExample) {
  MotionFeatureMap m(10, 10);
  m.at(3, 1) = 100;
  m.at(0, 5) = 77;
  m.at(6, 6) = 200;
  std::vector<std::int8_t> dom(100, 3);
  dom[6 * 10 + 6] = 5;
  const MotionFeatureMap out = filter_map(m, dom, rule_at(0, 5, 3));
  EXPECT_NEAR(1.0 - 5.0 / std::sqrt(125.0), 0.5528, 1e-4);
  EXPECT_EQ(out.at(3, 1), 55);
  EXPECT_EQ(out.at(0, 5), 77);  // exit point keeps its value
  EXPECT_EQ(out.at(6, 6), 0);   // wrong direction
}

TEST(Filter, NeverIncreasesAndVanishesFarAway) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> px(0, 255);
  std::uniform_int_distribution<int> dir(-1, 7);
  for (int trial = 0; trial < 50; ++trial) {
    MotionFeatureMap m(12, 9);
    std::vector<std::int8_t> dom(m.values.size());
    for (auto& v : m.values) v = static_cast<std::uint8_t>(px(rng));
    for (auto& d : dom) d = static_cast<std::int8_t>(dir(rng));
    const ShareRule rule = rule_at(0, 0, 1);
    const MotionFeatureMap out = filter_map(m, dom, rule);
    const double radius = std::hypot(9.0, 12.0);
    for (int r = 0; r < 9; ++r) {
      for (int c = 0; c < 12; ++c) {
        EXPECT_LE(out.at(r, c), m.at(r, c));
        if (std::hypot(r, c) >= radius) EXPECT_EQ(out.at(r, c), 0);
      }
    }
  }
  MotionFeatureMap m(4, 4);
  EXPECT_THROW(filter_map(m, std::vector<std::int8_t>(3, 0), rule_at(0, 0, 0)), InvalidArgument);
}

TEST(Aggregate, WeightArithmetic) {
  MotionFeatureMap target(2, 1);
  target.values = {10, 250};
  EXPECT_EQ(aggregate_shared_maps(target, {}), target);

  MotionFeatureMap a(2, 1);
  a.values = {40, 40};
  const SharedMap one[] = {{a, 0.8, 0.95}};
  EXPECT_EQ(aggregate_shared_maps(target, one).values, (std::vector<std::uint8_t>{50, 255}));

  const SharedMap two[] = {{a, 0.8, 0.95}, {a, 0.8, 0.95}};
  EXPECT_EQ(aggregate_shared_maps(target, two).values, (std::vector<std::uint8_t>{50, 255}));

  MotionFeatureMap b(2, 1);
  b.values = {0, 0};
  const SharedMap ab[] = {{a, 0.9, 1.0}, {b, 0.3, 1.0}};
  const SharedMap ba[] = {{b, 0.3, 1.0}, {a, 0.9, 1.0}};
  EXPECT_EQ(aggregate_shared_maps(target, ab).values[0], 40);  // 10 + 0.75 * 40
  EXPECT_EQ(aggregate_shared_maps(target, ab), aggregate_shared_maps(target, ba));
}

TEST(TrajectoryIo, RoundTripAndErrors) {
  const TrajectoryLog log = ten_objects();
  const TrajectoryLog back = parse_trajectory_log(format_trajectory_log(log));
  EXPECT_EQ(back.visits(), log.visits());
  EXPECT_EQ(back.cameras(), (std::vector<std::string>{"d", "s"}));
  EXPECT_THROW(parse_trajectory_log("a,s,2,1,0\n"), Error);
  EXPECT_THROW(parse_trajectory_log("a,s,0,1,8\n"), Error);
  EXPECT_THROW(parse_trajectory_log("a,s,0,1\n"), ParseError);
}

TEST(CorrelationMatrix, AllOrderedPairs) {
  const auto m = correlation_matrix(ten_objects());
  ASSERT_EQ(m.size(), 2u);
  EXPECT_EQ(m[0].source, "d");
  EXPECT_EQ(m[1].source, "s");
  EXPECT_DOUBLE_EQ(m[1].spatial, 0.7);
  EXPECT_EQ(m[1].arrivals, 7u);
  EXPECT_NEAR(m[1].mean_transit, 19.8 / 7.0, 1e-12);
}

TEST(SharedStream, FoldsSourceChunksInsideTheWindow) {
  MotionLog src;
  src.frame_w = 16;
  src.frame_h = 16;
  src.fps = 30;
  // one vector per chunk on chunk 0 only, moving right
  src.vectors = {MotionVector{0, 0, 6, 12, 6, 4, 4}};
  ShareRule rule = rule_at(1, 3, 0);
  rule.t1 = 2.0;
  rule.t2 = 3.0;
  rule.spatial = 0.9;
  rule.temporal = 1.0;
  const std::vector<MotionFeatureMap> target(5, MotionFeatureMap(4, 4));
  const auto out = shared_map_stream(target, src, rule, 30, 1.0);
  ASSERT_EQ(out.size(), 5u);
  int total[5] = {};
  for (int i = 0; i < 5; ++i) {
    for (auto v : out[static_cast<std::size_t>(i)].values) total[i] += v;
  }
  EXPECT_EQ(total[0] + total[1] + total[4], 0);
  EXPECT_GT(total[2], 0);
  // chunk 3 also receives the empty source chunk 1, which halves the weight
  EXPECT_GT(total[3], 0);
  EXPECT_LT(total[3], total[2]);
}

}  // namespace
}  // namespace vastream
