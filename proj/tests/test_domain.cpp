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

#include <algorithm>
#include <cmath>
#include <random>

#include "vastream/config.hpp"
#include "vastream/content_model.hpp"
#include "vastream/error.hpp"
#include "vastream/profile_io.hpp"
#include "vastream/trace.hpp"

namespace vastream {
namespace {

TEST(ConfigSpace, DefaultHas216) {
  const ConfigSpace s = default_config_space();
  ASSERT_EQ(s.size(), 216u);
  EXPECT_EQ(s[0], (Configuration{1.0, 30, 21, 0}));
  EXPECT_EQ(s[215], (Configuration{0.3, 1, 41, 215}));
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(s[i].id, static_cast<int>(i));
}

TEST(ConfigSpace, Singleton) {
  const double r[] = {1.0};
  const int f[] = {30};
  const int q[] = {21};
  const ConfigSpace s = build_config_space(r, f, q);
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0], (Configuration{1.0, 30, 21, 0}));
}

TEST(ConfigSpace, EightConfigsCanonicalOrder) {
  // given out of order on purpose
  const double r[] = {0.5, 1.0};
  const int f[] = {15, 30};
  const int q[] = {41, 21};
  const ConfigSpace s = build_config_space(r, f, q);
  ASSERT_EQ(s.size(), 8u);
  EXPECT_EQ(s[0], (Configuration{1.0, 30, 21, 0}));
  EXPECT_EQ(s[1], (Configuration{1.0, 30, 41, 1}));
  EXPECT_EQ(s[2], (Configuration{1.0, 15, 21, 2}));
  EXPECT_EQ(s[7], (Configuration{0.5, 15, 41, 7}));
  EXPECT_EQ(s.find(0.5, 30, 41), 5);
  EXPECT_EQ(s.find(0.8, 30, 41), -1);
}

TEST(ConfigSpace, Errors) {
  const double r[] = {1.0};
  const double bad_r[] = {0.7};
  const double dup_r[] = {1.0, 1.0};
  const int f[] = {30};
  const int q[] = {21};
  const int bad_q[] = {22};
  EXPECT_THROW(build_config_space({}, f, q), InvalidArgument);
  EXPECT_THROW(build_config_space(r, {}, q), InvalidArgument);
  EXPECT_THROW(build_config_space(bad_r, f, q), InvalidArgument);
  EXPECT_THROW(build_config_space(r, f, bad_q), InvalidArgument);
  EXPECT_THROW(build_config_space(dup_r, f, q), InvalidArgument);
}

// Independent evaluation of the size / accuracy closed forms.
double size_oracle(double r, int f, int qp, double m) {
  return 2.5e6 * std::pow(r, 1.5) * std::pow(f / 30.0, 0.6) * std::exp2(-(qp - 21) / 6.0) * (0.5 + m);
}

double acc_oracle(double r, int f, int qp, double m) {
  const double v = std::pow(r, 0.3 + 0.5 * m) * std::pow(f / 30.0, m) * (1.0 - 0.015 * (qp - 21));
  return std::clamp(v, 0.0, 1.0);
}

TEST(ContentModel, EncodedSizeExamples) {
  const ContentModel model;
  EXPECT_EQ(encoded_size(model, {1.0, 30, 21, 0}, 0.5), 2'500'000);
  // closed form gives 72,893.2
  EXPECT_NEAR(size_oracle(0.5, 15, 33, 0.0), 72'893.2, 0.05);
  EXPECT_EQ(encoded_size(model, {0.5, 15, 33, 0}, 0.0), 72'893);
  EXPECT_NEAR(static_cast<double>(encoded_size(model, {1.0, 30, 29, 0}, 0.5)), 992'126.0, 1.0);
}

TEST(ContentModel, AccuracyExamples) {
  const ContentModel model;
  for (double m : {0.0, 0.3, 1.0}) EXPECT_EQ(accuracy_of(model, {1.0, 30, 21, 0}, m), 1.0);
  EXPECT_NEAR(accuracy_of(model, {0.5, 1, 21, 0}, 0.0), 0.8123, 1e-4);
  EXPECT_NEAR(accuracy_of(model, {0.5, 15, 29, 0}, 1.0), 0.2527, 1e-4);
  // fps has no effect at m = 0
  EXPECT_EQ(accuracy_of(model, {0.6, 1, 33, 0}, 0.0), accuracy_of(model, {0.6, 30, 33, 0}, 0.0));
}

TEST(ContentModel, ComplexityOutOfRange) {
  const ContentModel model;
  EXPECT_THROW(encoded_size(model, {1.0, 30, 21, 0}, -0.01), InvalidArgument);
  EXPECT_THROW(accuracy_of(model, {1.0, 30, 21, 0}, 1.01), InvalidArgument);
}

TEST(ContentModel, MatchesOracleAndMonotoneOnRandomInputs) {
  const ContentModel model;
  const ConfigSpace space = default_config_space();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const double m = unit(rng);
    const auto& c = space[rng() % space.size()];
    const auto size = encoded_size(model, c, m);
    EXPECT_NEAR(static_cast<double>(size), size_oracle(c.resolution_scale, c.fps, c.qp, m), 0.5 + 1e-6);
    EXPECT_NEAR(accuracy_of(model, c, m), acc_oracle(c.resolution_scale, c.fps, c.qp, m), 1e-12);
    EXPECT_GT(size, 0);
    const auto with = [](double r, int f, int q) { return Configuration{r, f, q, 0}; };
    // one knob at a time
    for (double r2 : kResolutionDomain) {
      if (r2 >= c.resolution_scale) continue;
      const auto lower = with(r2, c.fps, c.qp);
      EXPECT_LE(encoded_size(model, lower, m), size);
      EXPECT_LE(accuracy_of(model, lower, m), accuracy_of(model, c, m));
    }
    for (int q2 : kQpDomain) {
      if (q2 <= c.qp) continue;
      EXPECT_LE(encoded_size(model, with(c.resolution_scale, c.fps, q2), m), size);
    }
    for (int f2 : kFpsDomain) {
      if (f2 >= c.fps) continue;
      EXPECT_LE(encoded_size(model, with(c.resolution_scale, f2, c.qp), m), size);
    }
    const double m2 = std::min(1.0, m + 0.1);
    EXPECT_GE(encoded_size(model, c, m2), size);
  }
}

TEST(Profile, SingleChunkFixedComplexity) {
  const ContentModel model;
  const ConfigSpace space = default_config_space();
  const VideoProfile p = generate_profile(model, 1, space, ComplexitySource::fixed({0.5}));
  ASSERT_EQ(p.n_configs(), 216u);
  EXPECT_EQ(p.accuracy(0, 0), 1.0);
  EXPECT_EQ(p.size_bytes(0, 0), 2'500'000);
  EXPECT_NO_THROW(p.check_monotone(space));
}

TEST(Profile, DeterministicFromSeed) {
  ContentModel model;
  model.seed = 99;
  const ConfigSpace space = default_config_space();
  const auto a = generate_profile(model, 50, space, ComplexitySource::random_walk());
  const auto b = generate_profile(model, 50, space, ComplexitySource::random_walk());
  EXPECT_EQ(a, b);
  model.seed = 100;
  EXPECT_FALSE(a == generate_profile(model, 50, space, ComplexitySource::random_walk()));
}

TEST(Profile, RandomWalkBounded) {
  const auto walk = random_walk_complexity(5, 1000, RandomWalkComplexity{});
  ASSERT_EQ(walk.size(), 1000u);
  for (std::size_t i = 0; i < walk.size(); ++i) {
    EXPECT_GE(walk[i], 0.0);
    EXPECT_LE(walk[i], 1.0);
    if (i > 0) EXPECT_LE(std::abs(walk[i] - walk[i - 1]), 0.1 + 1e-12);
  }
}

TEST(Profile, ZeroChunksRejected) {
  EXPECT_THROW(generate_profile(ContentModel{}, 0, default_config_space(), ComplexitySource::fixed({})),
               InvalidArgument);
}

TEST(ProfileIo, RoundTrip) {
  ContentModel model;
  const double r[] = {1.0, 0.5};
  const int f[] = {30};
  const int q[] = {21, 41};
  const ConfigSpace space = build_config_space(r, f, q);
  const auto p = generate_profile(model, 3, space, ComplexitySource::random_walk());
  const auto back = parse_profile(format_profile(p), std::vector<double>(p.complexity().begin(), p.complexity().end()));
  EXPECT_EQ(back, p);
}

TEST(ProfileIo, AccuracyOutOfRangeNamesCell) {
  const std::string text = "chunks=1,configs=2\n0,0,1.0,100\n0,1,1.2,50\n";
  try {
    parse_profile(text);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    const std::string what = e.what();
    EXPECT_NE(what.find("chunk 0"), std::string::npos) << what;
    EXPECT_NE(what.find("config 1"), std::string::npos) << what;
  }
}

TEST(ProfileIo, Malformed) {
  EXPECT_THROW(parse_profile(""), ParseError);
  EXPECT_THROW(parse_profile("chunks=1,configs=1\n0,0,0.5\n"), ParseError);
  EXPECT_THROW(parse_profile("chunks=1,configs=1\n0,0,0.5,0\n"), Error);
  EXPECT_THROW(parse_profile("chunks=1,configs=2\n0,0,0.5,10\n"), Error);  // missing cell
}

TEST(Trace, ParseTwoLines) {
  const NetworkTrace t = parse_trace("0,125000\n1,250000");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t.samples()[1].bandwidth, 250000.0);
  EXPECT_EQ(t.duration(), 2.0);
}

TEST(Trace, ParseErrors) {
  EXPECT_THROW(parse_trace(""), ParseError);
  EXPECT_THROW(parse_trace("0,1\n0,2\n"), Error);
  EXPECT_THROW(parse_trace("0,1\n1,0\n"), Error);
  try {
    parse_trace("# c\n0,1\n1,x\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(Trace, ScaleExamples) {
  const double mbit = kBytesPerMbit;
  const NetworkTrace t({{0, 10 * mbit}, {1, 20 * mbit}, {2, 30 * mbit}});
  const NetworkTrace s = scale_trace(t, 0.2 * mbit, 2.0 * mbit);
  EXPECT_NEAR(s.samples()[0].bandwidth, 0.2 * mbit, 1e-6);
  EXPECT_NEAR(s.samples()[1].bandwidth, 1.1 * mbit, 1e-6);
  EXPECT_NEAR(s.samples()[2].bandwidth, 2.0 * mbit, 1e-6);
  EXPECT_EQ(s.samples()[2].t, 2.0);

  const NetworkTrace flat({{0, 5.0}, {1, 5.0}});
  const NetworkTrace flat_scaled = scale_trace(flat, 10.0, 20.0);
  for (const auto& x : flat_scaled.samples()) EXPECT_EQ(x.bandwidth, 15.0);

  const NetworkTrace again = scale_trace(s, 0.2 * mbit, 2.0 * mbit);
  EXPECT_EQ(again.min_bandwidth(), 0.2 * mbit);
  EXPECT_EQ(again.max_bandwidth(), 2.0 * mbit);
  EXPECT_THROW(scale_trace(t, 2.0, 2.0), InvalidArgument);
}

TEST(Trace, ScalePreservesRank) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> bw(1e3, 1e7);
  std::vector<TraceSample> samples;
  for (int i = 0; i < 200; ++i) samples.push_back({static_cast<double>(i), bw(rng)});
  const NetworkTrace t(samples);
  const NetworkTrace s = scale_trace(t, 25'000, 250'000);
  for (int i = 0; i < 200; ++i) {
    for (int j = 0; j < 200; ++j) {
      if (samples[i].bandwidth < samples[j].bandwidth) {
        EXPECT_LE(s.samples()[i].bandwidth, s.samples()[j].bandwidth);
      }
    }
  }
  EXPECT_EQ(s.min_bandwidth(), 25'000);
  EXPECT_EQ(s.max_bandwidth(), 250'000);
}

TEST(Trace, DrainTimeMatchesHandIntegration) {
  // 100 B/s for 1 s then 300 B/s for 1 s, cyclic
  const NetworkTrace t({{0, 100.0}, {1, 300.0}});
  EXPECT_DOUBLE_EQ(t.drain_time(50, 0), 0.5);
  EXPECT_DOUBLE_EQ(t.drain_time(250, 0), 1.5);
  EXPECT_DOUBLE_EQ(t.drain_time(400, 0), 2.0);
  EXPECT_DOUBLE_EQ(t.drain_time(900, 0), 5.0);      // two 400-byte cycles, then 1 s at 100 B/s
  EXPECT_DOUBLE_EQ(t.drain_time(300, 1.0), 1.0);    // all at 300 B/s
  EXPECT_DOUBLE_EQ(t.drain_time(250, 1.5), 1.5);    // 150 + 100
  EXPECT_DOUBLE_EQ(t.transferred_bytes(0.5, 1.5), 200.0);
}

}  // namespace
}  // namespace vastream
