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

#ifndef VASTREAM_SIMULATOR_HPP_
#define VASTREAM_SIMULATOR_HPP_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "vastream/config.hpp"
#include "vastream/content_model.hpp"
#include "vastream/motion.hpp"
#include "vastream/trace.hpp"

namespace vastream {

// Seconds from the start of the transfer at `start` until the server has
// the last byte: rtt plus the fluid drain time of `size` bytes through the
// cyclic trace.
double upload_delay(double size, const NetworkTrace& trace, double start, double rtt);

// max(prev_lag + u - T, 0).
double lag_update(double prev_lag, double upload_delay, double chunk_seconds);

// What the controller sees before choosing the configuration of chunk
// `chunk_idx`. Histories hold the last k chunks, oldest first, zero-padded
// at the front during the first k chunks.
struct StateObservation {
  std::size_t chunk_idx = 0;
  std::vector<double> sizes;        // bytes
  std::vector<double> throughputs;  // bytes/s
  std::vector<double> delays;       // s
  std::vector<double> buffers;      // lag after each chunk (s)
  std::vector<double> resolutions;
  std::vector<double> fps;
  std::vector<double> qps;
  double buffer = 0.0;  // seconds of video backlogged at the camera (the current lag)
  // Feature map of the most recently uploaded chunk; null means all-zero.
  std::shared_ptr<const MotionFeatureMap> motion;

  std::size_t history() const noexcept { return sizes.size(); }
  friend bool operator==(const StateObservation& a, const StateObservation& b);
};

struct ChunkOutcome {
  std::size_t chunk_idx = 0;
  int config_id = 0;
  std::int64_t size = 0;
  double start = 0.0;         // upload start time (s)
  double upload_delay = 0.0;  // s, includes rtt
  double lag = 0.0;           // s, after this chunk
  double accuracy = 0.0;
  double throughput = 0.0;    // measured bytes/s

  friend bool operator==(const ChunkOutcome&, const ChunkOutcome&) = default;
};

struct EnvOptions {
  double chunk_seconds = 1.0;
  double rtt = 0.08;
  std::size_t history = 8;
};

// Chunk-by-chunk streaming session over one profile and one trace. Chunk i
// is captured by (i + 1) * T and its upload starts at i * T + lag_{i-1},
// when the link has finished the previous chunk; this is exactly the lag
// recursion.
class Env {
 public:
  using MapStream = std::vector<MotionFeatureMap>;

  Env(std::shared_ptr<const VideoProfile> profile, std::shared_ptr<const NetworkTrace> trace,
      std::shared_ptr<const ConfigSpace> space, EnvOptions options = {},
      std::shared_ptr<const MapStream> maps = nullptr);

  StateObservation reset();
  const StateObservation& observe() const noexcept { return state_; }

  struct Step {
    ChunkOutcome outcome;
    StateObservation next;
  };
  // Throws Error when every chunk has been streamed.
  Step step(int config_id);

  bool done() const noexcept { return next_chunk_ >= profile_->n_chunks(); }
  std::size_t n_chunks() const noexcept { return profile_->n_chunks(); }
  double lag() const noexcept { return lag_; }

  const VideoProfile& profile() const noexcept { return *profile_; }
  const NetworkTrace& trace() const noexcept { return *trace_; }
  const ConfigSpace& space() const noexcept { return *space_; }
  const EnvOptions& options() const noexcept { return options_; }
  const MapStream* maps() const noexcept { return maps_.get(); }

 private:
  std::shared_ptr<const MotionFeatureMap> map_for(std::size_t chunk) const;

  std::shared_ptr<const VideoProfile> profile_;
  std::shared_ptr<const NetworkTrace> trace_;
  std::shared_ptr<const ConfigSpace> space_;
  EnvOptions options_;
  std::shared_ptr<const MapStream> maps_;
  std::vector<std::shared_ptr<const MotionFeatureMap>> map_ptrs_;

  std::size_t next_chunk_ = 0;
  double lag_ = 0.0;
  StateObservation state_;
};

// Chooses a configuration id from a state. Policies may keep per-session
// state; reset() is called before every session.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual void reset() {}
  virtual int act(const StateObservation& state) = 0;
  virtual std::string name() const = 0;
};

struct CdfPoint {
  double value = 0.0;
  double cum_fraction = 0.0;
};

// Empirical CDF: one point per distinct value, ending at 1.
std::vector<CdfPoint> empirical_cdf(std::vector<double> values);

struct SessionMetrics {
  std::vector<ChunkOutcome> outcomes;
  double mean_accuracy = 0.0;
  double mean_lag = 0.0;
  std::vector<CdfPoint> accuracy_cdf;
  std::vector<CdfPoint> lag_cdf;
};

SessionMetrics summarize(std::vector<ChunkOutcome> outcomes);

// Resets the env and the policy, then streams every chunk.
SessionMetrics run_session(Policy& policy, Env& env);

// Serialization: JSON summary, per-chunk CSV
// `chunk,config_id,size,u,lag,accuracy`, CDF CSV `value,cum_fraction`.
std::string metrics_summary_json(const SessionMetrics& metrics, const std::string& policy_name);
std::string format_chunks_csv(const SessionMetrics& metrics);
std::string format_cdf_csv(const std::vector<CdfPoint>& cdf);

}  // namespace vastream

#endif  // VASTREAM_SIMULATOR_HPP_
