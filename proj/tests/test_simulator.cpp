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
#include <memory>
#include <random>

#include "vastream/config.hpp"
#include "vastream/content_model.hpp"
#include "vastream/error.hpp"
#include "vastream/simulator.hpp"
#include "vastream/trace.hpp"

namespace vastream {
namespace {

// Straightforward second-by-second drain over a trace sampled at integer seconds.
double naive_drain(const std::vector<double>& bw, double bytes, double start) {
  const double n = static_cast<double>(bw.size());
  double t = start;
  double rem = bytes;
  while (true) {
    const double cyc = std::fmod(t, n);
    const auto seg = static_cast<std::size_t>(std::floor(cyc));
    const double room = (static_cast<double>(seg) + 1.0 - cyc) * bw[seg];
    if (room >= rem) return t + rem / bw[seg] - start;
    rem -= room;
    t += static_cast<double>(seg) + 1.0 - cyc;
  }
}

NetworkTrace integer_trace(const std::vector<double>& bw) {
  std::vector<TraceSample> s;
  for (std::size_t i = 0; i < bw.size(); ++i) s.push_back({static_cast<double>(i), bw[i]});
  return NetworkTrace(std::move(s), static_cast<double>(bw.size()));
}

std::shared_ptr<const ConfigSpace> four_configs() {
  const double r[] = {1.0, 0.5};
  const int f[] = {30};
  const int q[] = {21, 33};
  return std::make_shared<const ConfigSpace>(build_config_space(r, f, q));
}

std::shared_ptr<const VideoProfile> random_profile(std::mt19937_64& rng, std::size_t n, std::size_t c,
                                                   std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> size(lo, hi);
  std::uniform_real_distribution<double> acc(0.0, 1.0);
  std::vector<double> a(n * c);
  std::vector<std::int64_t> s(n * c);
  for (auto& v : a) v = acc(rng);
  for (auto& v : s) v = size(rng);
  return std::make_shared<const VideoProfile>(n, c, std::vector<double>(n, 0.5), std::move(a), std::move(s));
}

TEST(LagUpdate, Examples) {
  EXPECT_DOUBLE_EQ(lag_update(0.0, 1.5, 1.0), 0.5);
  EXPECT_DOUBLE_EQ(lag_update(0.5, 0.3, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(lag_update(0.5, 1.2, 1.0), 0.7);
  EXPECT_THROW(lag_update(-0.1, 1.0, 1.0), InvalidArgument);
  EXPECT_THROW(lag_update(0.0, 1.0, 0.0), InvalidArgument);
}

TEST(UploadDelay, AddsRtt) {
  const NetworkTrace t = integer_trace({100.0, 300.0});
  EXPECT_DOUBLE_EQ(upload_delay(250.0, t, 0.0, 0.08), 0.08 + 1.5);  // 100 + 150
  EXPECT_THROW(upload_delay(0.0, t, 0.0, 0.08), InvalidArgument);
  EXPECT_THROW(upload_delay(10.0, t, -1.0, 0.08), InvalidArgument);
}

TEST(Env, FoldMatchesIndependentRecursion) {
  std::mt19937_64 rng(99);
  const std::size_t n = 10'000;
  std::vector<double> bw(97);
  std::uniform_real_distribution<double> b(10'000.0, 250'000.0);
  for (auto& v : bw) v = b(rng);
  auto trace = std::make_shared<const NetworkTrace>(integer_trace(bw));
  auto profile = random_profile(rng, n, 4, 2'000, 240'000);
  const EnvOptions opt{1.0, 0.08, 8};
  Env env(profile, trace, four_configs(), opt);

  std::uniform_int_distribution<int> pick(0, 3);
  double lag = 0.0;
  int lagged = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const int c = pick(rng);
    const auto step = env.step(c);
    const double start = static_cast<double>(i) * opt.chunk_seconds + lag;
    const double u = opt.rtt + naive_drain(bw, static_cast<double>(profile->size_bytes(i, c)), start);
    lag = std::max(lag + u - opt.chunk_seconds, 0.0);
    ASSERT_NEAR(step.outcome.upload_delay, u, 1e-9 * std::max(1.0, u)) << "chunk " << i;
    ASSERT_NEAR(step.outcome.lag, lag, 1e-9 * std::max(1.0, lag)) << "chunk " << i;
    ASSERT_GE(step.outcome.lag, 0.0);
    lagged += lag > 0.0;
  }
  EXPECT_GT(lagged, 1000);
  EXPECT_TRUE(env.done());
  EXPECT_THROW(env.step(0), Error);
}

TEST(Env, StateHistoryShiftsOldestOut) {
  std::mt19937_64 rng(3);
  auto profile = random_profile(rng, 5, 4, 1'000, 2'000);
  auto trace = std::make_shared<const NetworkTrace>(integer_trace({10'000.0}));
  Env env(profile, trace, four_configs(), EnvOptions{1.0, 0.0, 3});
  const StateObservation s0 = env.observe();
  EXPECT_EQ(s0.history(), 3u);
  for (double v : s0.sizes) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(s0.buffer, 0.0);

  env.step(3);
  const auto st = env.step(0);
  const auto& s = st.next;
  EXPECT_EQ(s.chunk_idx, 2u);
  EXPECT_EQ(s.sizes[0], 0.0);
  EXPECT_EQ(s.sizes[1], static_cast<double>(profile->size_bytes(0, 3)));
  EXPECT_EQ(s.sizes[2], static_cast<double>(profile->size_bytes(1, 0)));
  EXPECT_EQ(s.resolutions[1], 0.5);
  EXPECT_EQ(s.qps[1], 33.0);
  EXPECT_EQ(s.resolutions[2], 1.0);
  EXPECT_EQ(s.fps[2], 30.0);
  EXPECT_NEAR(s.throughputs[2], 10'000.0, 1e-6);
  EXPECT_NEAR(s.delays[2], static_cast<double>(profile->size_bytes(1, 0)) / 10'000.0, 1e-12);
  EXPECT_EQ(s.motion, nullptr);

  EXPECT_EQ(env.reset(), s0);
}

TEST(Env, RejectsBadInput) {
  std::mt19937_64 rng(4);
  auto profile = random_profile(rng, 3, 4, 1'000, 2'000);
  auto trace = std::make_shared<const NetworkTrace>(integer_trace({10'000.0}));
  Env env(profile, trace, four_configs());
  EXPECT_THROW(env.step(4), InvalidArgument);
  EXPECT_THROW(env.step(-1), InvalidArgument);
  auto wrong = random_profile(rng, 3, 5, 1'000, 2'000);
  EXPECT_THROW(Env(wrong, trace, four_configs()), InvalidArgument);
  EXPECT_THROW(Env(profile, trace, four_configs(), EnvOptions{0.0, 0.08, 8}), InvalidArgument);
  auto short_maps = std::make_shared<const Env::MapStream>(2, MotionFeatureMap(4, 4));
  EXPECT_THROW(Env(profile, trace, four_configs(), {}, short_maps), InvalidArgument);
}

TEST(Env, StateCarriesMapOfLastUploadedChunk) {
  std::mt19937_64 rng(5);
  auto profile = random_profile(rng, 3, 4, 1'000, 2'000);
  auto trace = std::make_shared<const NetworkTrace>(integer_trace({10'000.0}));
  auto maps = std::make_shared<Env::MapStream>();
  for (std::uint8_t v = 1; v <= 3; ++v) maps->push_back(MotionFeatureMap(2, 2, v));
  Env env(profile, trace, four_configs(), {}, maps);
  EXPECT_EQ(env.observe().motion, nullptr);
  EXPECT_EQ(env.step(0).next.motion->values[0], 1);
  EXPECT_EQ(env.step(0).next.motion->values[0], 2);
}

class Constant : public Policy {
 public:
  explicit Constant(int c) : c_(c) {}
  int act(const StateObservation&) override { return c_; }
  std::string name() const override { return "constant"; }

 private:
  int c_;
};

TEST(Session, DeterministicAndSummarized) {
  std::mt19937_64 rng(6);
  auto profile = random_profile(rng, 40, 4, 10'000, 90'000);
  auto trace = std::make_shared<const NetworkTrace>(integer_trace({30'000.0, 80'000.0, 50'000.0}));
  Env env(profile, trace, four_configs());
  Constant p(2);
  const SessionMetrics a = run_session(p, env);
  const SessionMetrics b = run_session(p, env);
  EXPECT_EQ(a.outcomes, b.outcomes);
  ASSERT_EQ(a.outcomes.size(), 40u);
  double acc = 0.0;
  double lag = 0.0;
  for (const auto& o : a.outcomes) {
    acc += o.accuracy;
    lag += o.lag;
  }
  EXPECT_NEAR(a.mean_accuracy, acc / 40.0, 1e-12);
  EXPECT_NEAR(a.mean_lag, lag / 40.0, 1e-12);
  EXPECT_DOUBLE_EQ(a.accuracy_cdf.back().cum_fraction, 1.0);
  EXPECT_EQ(format_chunks_csv(a), format_chunks_csv(b));
  EXPECT_EQ(format_chunks_csv(a).substr(0, 35), "chunk,config_id,size,u,lag,accuracy");
}

TEST(Cdf, TiesCollapse) {
  const auto cdf = empirical_cdf({3.0, 1.0, 2.0, 2.0});
  ASSERT_EQ(cdf.size(), 3u);
  EXPECT_EQ(cdf[0].value, 1.0);
  EXPECT_DOUBLE_EQ(cdf[0].cum_fraction, 0.25);
  EXPECT_EQ(cdf[1].value, 2.0);
  EXPECT_DOUBLE_EQ(cdf[1].cum_fraction, 0.75);
  EXPECT_DOUBLE_EQ(cdf[2].cum_fraction, 1.0);
  EXPECT_TRUE(empirical_cdf({}).empty());
}

}  // namespace
}  // namespace vastream
