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

#include "vastream/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "vastream/error.hpp"
#include "vastream/profile_io.hpp"
#include "vastream/text.hpp"

namespace vastream {

Env Scenario::make_env(double trace_offset) const {
  auto t = trace_offset == 0.0 ? trace : std::make_shared<const NetworkTrace>(trace->shifted(trace_offset));
  return Env(profile, std::move(t), space, env, maps);
}

NetworkTrace synth_lte_trace(std::uint64_t seed, std::size_t seconds) {
  if (seconds < 2) throw InvalidArgument("trace needs at least two samples");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 0.25);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double mean_log = std::log(12.0 * kBytesPerMbit);
  double x = mean_log;
  int fade = 0;
  std::vector<TraceSample> samples;
  samples.reserve(seconds);
  for (std::size_t t = 0; t < seconds; ++t) {
    x = 0.85 * x + 0.15 * mean_log + noise(rng);
    if (fade == 0 && unit(rng) < 0.03) fade = 3 + static_cast<int>(unit(rng) * 6.0);
    double bw = std::exp(x);
    if (fade > 0) {
      bw *= 0.15;
      --fade;
    }
    samples.push_back({static_cast<double>(t), bw});
  }
  return NetworkTrace(std::move(samples));
}

NetworkTrace two_level_trace(double high, double low, double period, double duration) {
  if (!(high > 0.0) || !(low > 0.0) || !(period > 0.0) || duration < period) {
    throw InvalidArgument("bad two-level trace parameters");
  }
  std::vector<TraceSample> samples;
  const double half = period / 2.0;
  for (int k = 0; k * half < duration; ++k) samples.push_back({k * half, k % 2 == 0 ? high : low});
  return NetworkTrace(std::move(samples), std::ceil(duration / period) * period);
}

MotionLog synth_motion_log(std::span<const double> complexity, const MotionSynthOptions& o) {
  if (o.frame_w < 32 || o.frame_h < 32 || o.fps <= 0 || o.frame_stride <= 0) {
    throw InvalidArgument("bad motion synthesis options");
  }
  MotionLog log;
  log.frame_w = o.frame_w;
  log.frame_h = o.frame_h;
  log.fps = o.fps;
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double angle = o.sector * 3.14159265358979323846 / 4.0;
  const double ux = std::cos(angle);
  const double uy = std::sin(angle);
  constexpr int kBlock = 16;
  const int band_lo = o.frame_h / 3;
  const int band_hi = 2 * o.frame_h / 3;

  struct Object {
    double x, y;
  };
  std::vector<Object> objects;
  const auto spawn = [&] {
    return Object{kBlock + unit(rng) * (o.frame_w - 2 * kBlock),
                  band_lo + unit(rng) * (band_hi - band_lo)};
  };
  for (std::size_t i = 0; i < complexity.size(); ++i) {
    const double m = complexity[i];
    const auto want = static_cast<std::size_t>(1 + std::lround(8.0 * m));
    while (objects.size() < want) objects.push_back(spawn());
    objects.resize(want);
    const double speed = (2.0 + 8.0 * m) * o.frame_stride;
    for (int f = 0; f < o.fps; f += o.frame_stride) {
      const int frame = static_cast<int>(i) * o.fps + f;
      for (auto& obj : objects) {
        obj.x += speed * ux;
        obj.y += speed * uy;
        if (obj.x < kBlock || obj.x > o.frame_w - kBlock || obj.y < kBlock ||
            obj.y > o.frame_h - kBlock) {
          obj = spawn();
          continue;
        }
        // two blocks along the direction of travel
        for (int b = 0; b < 2; ++b) {
          const double bx = std::clamp(obj.x - b * kBlock * ux, 0.0, o.frame_w - 1.0);
          const double by = std::clamp(obj.y - b * kBlock * uy, 0.0, o.frame_h - 1.0);
          MotionVector mv;
          mv.frame_idx = frame;
          mv.dst_x = static_cast<int>(bx);
          mv.dst_y = static_cast<int>(by);
          mv.src_x = std::clamp(static_cast<int>(std::lround(bx - speed * ux)), 0, o.frame_w - 1);
          mv.src_y = std::clamp(static_cast<int>(std::lround(by - speed * uy)), 0, o.frame_h - 1);
          mv.block_w = kBlock;
          mv.block_h = kBlock;
          log.vectors.push_back(mv);
        }
      }
    }
  }
  return log;
}

TrajectoryLog camera_fixture() {
  std::vector<Visit> visits;
  const auto id = [](int n) {
    std::string s = std::to_string(n);
    return "v" + std::string(4 - std::min<std::size_t>(4, s.size()), '0') + s;
  };
  int loops = 0;
  for (int o = 0; o < 1000; ++o) {
    const double t0 = 0.5 * o;
    const bool to_c = (o * 7) % 1000 < 883;
    visits.push_back({id(o), "A", t0, t0 + 2.0, to_c ? 0 : 4});
    if (!to_c) {
      visits.push_back({id(o), "B", t0 + 3.5, t0 + 5.0, 4});
      continue;
    }
    const double transit = 2.7 + ((o * 37) % 101 - 50) / 100.0;
    const double c_in = t0 + 2.0 + transit;
    const bool back = loops < 178;
    visits.push_back({id(o), "C", c_in, c_in + 2.0, back ? 6 : 2});
    if (back) {
      ++loops;
      visits.push_back({id(o), "A", c_in + 5.0, c_in + 7.0, 4});
    } else {
      visits.push_back({id(o), "D", c_in + 3.5, c_in + 5.0, 2});
    }
  }
  for (int o = 1000; o < 1117; ++o) {
    const double t0 = 0.5 * (o - 1000) + 0.25;
    visits.push_back({id(o), "C", t0, t0 + 2.0, 2});
    visits.push_back({id(o), "D", t0 + 3.5, t0 + 5.0, 2});
  }
  return TrajectoryLog(std::move(visits));
}

std::vector<double> toy_space_resolutions() { return {1.0, 0.5}; }
std::vector<int> toy_space_fps() { return {30}; }
std::vector<int> toy_space_qps() { return {21, 33}; }

ContentModel toy_content_model(std::uint64_t seed) {
  ContentModel model;
  model.base_size_bytes = 150'000;
  model.seed = seed;
  return model;
}

namespace {

constexpr std::size_t kToyChunks = 60;
constexpr double kToyHigh = 250'000.0;
constexpr double kToyLow = 25'000.0;
constexpr double kToyPeriod = 20.0;

}  // namespace

Scenario toy_scenario(std::uint64_t seed) {
  Scenario s;
  auto space = std::make_shared<ConfigSpace>(
      build_config_space(toy_space_resolutions(), toy_space_fps(), toy_space_qps()));
  s.profile = std::make_shared<const VideoProfile>(generate_profile(
      toy_content_model(seed), kToyChunks, *space, ComplexitySource::random_walk()));
  s.space = std::move(space);
  s.trace = std::make_shared<const NetworkTrace>(
      two_level_trace(kToyHigh, kToyLow, kToyPeriod, kToyPeriod));
  return s;
}

std::vector<std::string> write_demo_assets(const std::filesystem::path& dir, std::uint64_t seed) {
  std::vector<std::string> written;
  const auto put = [&](const std::string& name, const std::string& contents) {
    text::write_file(dir / name, contents);
    written.push_back(name);
  };

  constexpr std::size_t kChunks = 300;
  constexpr std::size_t kLead = 3;  // A sees the traffic about 3 s before C
  const ConfigSpace space = default_config_space();
  ContentModel model;
  model.seed = seed;
  const auto complexity = random_walk_complexity(seed, kChunks + kLead, RandomWalkComplexity{});
  const std::vector<double> target(complexity.begin(), complexity.begin() + kChunks);
  std::vector<double> source(kChunks);
  for (std::size_t j = 0; j < kChunks; ++j) source[j] = complexity[j + kLead];

  const VideoProfile profile = generate_profile(model, kChunks, space, ComplexitySource::fixed(target));
  put("profile.csv", format_profile(profile));
  std::string cx;
  for (double m : target) cx += text::format_double(m) + '\n';
  put("complexity.txt", cx);

  const NetworkTrace raw = synth_lte_trace(seed + 1, 600);
  put("trace.csv", "# LTE-like synthetic trace scaled to 0.2-2.0 Mbps (bytes/s)\n" +
                       format_trace(scale_trace(raw, kDemoTraceLo, kDemoTraceHi)));

  put("generous_trace.csv", "# constant 100 Mbps: golden chunks upload well within T\n" +
                                format_trace(NetworkTrace({{0.0, 100.0 * kBytesPerMbit}}, 600.0)));

  MotionSynthOptions mo;
  mo.seed = seed + 2;
  put("motion_c.log", format_motion_log(synth_motion_log(target, mo)));
  mo.seed = seed + 3;
  mo.sector = 0;
  put("motion_a.log", format_motion_log(synth_motion_log(source, mo)));
  put("trajectories.csv", format_trajectory_log(camera_fixture()));

  put("demo.spec",
      "# bundled 300-chunk scenario: camera C, with camera A as a correlated source\n"
      "scenario=demo\n"
      "profile=profile.csv\n"
      "complexity=complexity.txt\n"
      "trace=trace.csv\n"
      "mv_log=motion_c.log\n"
      "source_mv_log=motion_a.log\n"
      "trajectory_log=trajectories.csv\n"
      "source_camera=A\n"
      "target_camera=C\n"
      "demo_offsets=0,60,120,180,240\n"
      "val_offsets=30,90,210\n"
      "trace_offset=150\n"
      "# golden chunks run about 1.3-3.8 MB, so sessions are replayed at 10-30 Mbps;\n"
      "# at 0.2-2 Mbps every golden profiling segment adds tens of seconds of lag\n"
      "scale_trace=10,30\n"
      "epochs=150\n"
      "lr=1e-3\n"
      "disc_lr=1e-5\n");

  const Scenario toy = toy_scenario(seed);
  put("toy_profile.csv", format_profile(*toy.profile));
  put("toy_trace.csv", format_trace(*toy.trace));
  put("toy.spec",
      "# 4 configurations, 60 chunks, two-level periodic trace\n"
      "scenario=toy\n"
      "profile=toy_profile.csv\n"
      "trace=toy_trace.csv\n"
      "resolutions=1,0.5\n"
      "fps=30\n"
      "qps=21,33\n"
      "demo_offsets=0,4,8,12,16\n"
      "val_offsets=6,14\n"
      "trace_offset=2\n"
      "# a small problem tolerates a faster policy step\n"
      "epochs=300\n"
      "lr=1e-3\n"
      "disc_lr=1e-4\n");
  return written;
}

}  // namespace vastream
