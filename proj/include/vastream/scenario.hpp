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

#ifndef VASTREAM_SCENARIO_HPP_
#define VASTREAM_SCENARIO_HPP_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "vastream/config.hpp"
#include "vastream/content_model.hpp"
#include "vastream/cross_camera.hpp"
#include "vastream/motion.hpp"
#include "vastream/simulator.hpp"
#include "vastream/trace.hpp"

namespace vastream {

// Everything an Env needs, shared read-only between sessions.
struct Scenario {
  std::shared_ptr<const ConfigSpace> space;
  std::shared_ptr<const VideoProfile> profile;
  std::shared_ptr<const NetworkTrace> trace;
  std::shared_ptr<const Env::MapStream> maps;  // null: no motion input
  EnvOptions env;

  // Session over the trace rotated by `trace_offset` seconds.
  Env make_env(double trace_offset = 0.0) const;
};

inline constexpr double kDemoTraceLo = 0.2 * kBytesPerMbit;
inline constexpr double kDemoTraceHi = 2.0 * kBytesPerMbit;

// LTE-like bandwidth: a log-normal AR(1) walk with occasional fades, one
// sample per second, in bytes/s before any scaling.
NetworkTrace synth_lte_trace(std::uint64_t seed, std::size_t seconds);

// Alternates `high` and `low` bytes/s every half period.
NetworkTrace two_level_trace(double high, double low, double period, double duration);

struct MotionSynthOptions {
  int frame_w = 160;
  int frame_h = 96;
  int fps = 30;
  int frame_stride = 3;  // vectors are logged on every stride-th frame
  int sector = 0;        // dominant direction of object motion
  std::uint64_t seed = 1;
};

// Objects crossing a horizontal road band; their count and speed grow with
// the chunk's complexity, so the feature maps track content dynamics.
MotionLog synth_motion_log(std::span<const double> complexity, const MotionSynthOptions& options);

// Four cameras A-D. 1000 objects start at A; 883 continue to C after about
// 2.7 s and the rest to B. 178 of the objects reaching C return to A, the
// others and 117 objects first seen at C go on to D.
TrajectoryLog camera_fixture();

// 4 configurations, 60 chunks, two-level periodic trace.
Scenario toy_scenario(std::uint64_t seed = 7);
ContentModel toy_content_model(std::uint64_t seed);
std::vector<double> toy_space_resolutions();
std::vector<int> toy_space_fps();
std::vector<int> toy_space_qps();

// Writes the bundled demo and toy assets plus their spec files into `dir`.
std::vector<std::string> write_demo_assets(const std::filesystem::path& dir, std::uint64_t seed = 2026);

}  // namespace vastream

#endif  // VASTREAM_SCENARIO_HPP_
