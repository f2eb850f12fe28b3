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

#include "vastream/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "vastream/error.hpp"

namespace vastream {

double upload_delay(double size, const NetworkTrace& trace, double start, double rtt) {
  if (!(size > 0.0)) throw InvalidArgument("upload size must be positive");
  if (!(start >= 0.0)) throw InvalidArgument("upload start must be non-negative");
  if (!(rtt >= 0.0)) throw InvalidArgument("rtt must be non-negative");
  return rtt + trace.drain_time(size, start);
}

double lag_update(double prev_lag, double upload_delay, double chunk_seconds) {
  if (!(prev_lag >= 0.0) || !(upload_delay >= 0.0) || !(chunk_seconds > 0.0)) {
    throw InvalidArgument("lag_update needs prev_lag >= 0, u >= 0, T > 0");
  }
  return std::max(prev_lag + upload_delay - chunk_seconds, 0.0);
}

bool operator==(const StateObservation& a, const StateObservation& b) {
  const bool same_map = a.motion == b.motion || (a.motion && b.motion && *a.motion == *b.motion);
  return a.chunk_idx == b.chunk_idx && a.sizes == b.sizes && a.throughputs == b.throughputs &&
         a.delays == b.delays && a.buffers == b.buffers && a.resolutions == b.resolutions && a.fps == b.fps &&
         a.qps == b.qps && a.buffer == b.buffer && same_map;
}

Env::Env(std::shared_ptr<const VideoProfile> profile, std::shared_ptr<const NetworkTrace> trace,
         std::shared_ptr<const ConfigSpace> space, EnvOptions options,
         std::shared_ptr<const MapStream> maps)
    : profile_(std::move(profile)),
      trace_(std::move(trace)),
      space_(std::move(space)),
      options_(options),
      maps_(std::move(maps)) {
  if (!profile_ || !trace_ || !space_) throw InvalidArgument("env needs profile, trace and space");
  if (profile_->n_configs() != space_->size()) {
    throw InvalidArgument("profile has " + std::to_string(profile_->n_configs()) +
                          " configs but the space has " + std::to_string(space_->size()));
  }
  if (!(options_.chunk_seconds > 0.0)) throw InvalidArgument("chunk length must be positive");
  if (!(options_.rtt >= 0.0)) throw InvalidArgument("rtt must be non-negative");
  if (options_.history == 0) throw InvalidArgument("history length must be at least 1");
  if (maps_) {
    if (maps_->size() < profile_->n_chunks()) {
      throw InvalidArgument("feature-map stream is shorter than the profile");
    }
    // aliasing pointers into the shared stream; states stay cheap to copy
    map_ptrs_.reserve(maps_->size());
    for (const auto& m : *maps_) map_ptrs_.emplace_back(maps_, &m);
  }
  reset();
}

std::shared_ptr<const MotionFeatureMap> Env::map_for(std::size_t chunk) const {
  return chunk < map_ptrs_.size() ? map_ptrs_[chunk] : nullptr;
}

StateObservation Env::reset() {
  next_chunk_ = 0;
  lag_ = 0.0;
  const std::size_t k = options_.history;
  state_ = StateObservation{};
  state_.chunk_idx = 0;
  for (auto* h : {&state_.sizes, &state_.throughputs, &state_.delays, &state_.buffers, &state_.resolutions,
                  &state_.fps, &state_.qps}) {
    h->assign(k, 0.0);
  }
  return state_;
}

namespace {

void push_history(std::vector<double>& h, double v) {
  std::rotate(h.begin(), h.begin() + 1, h.end());
  h.back() = v;
}

}  // namespace

Env::Step Env::step(int config_id) {
  if (done()) throw Error("stepping an exhausted env");
  if (config_id < 0 || static_cast<std::size_t>(config_id) >= space_->size()) {
    throw InvalidArgument("config id " + std::to_string(config_id) + " outside the space");
  }
  const std::size_t i = next_chunk_;
  const auto c = static_cast<std::size_t>(config_id);
  const Configuration& cfg = (*space_)[c];
  const double T = options_.chunk_seconds;

  ChunkOutcome out;
  out.chunk_idx = i;
  out.config_id = config_id;
  out.size = profile_->size_bytes(i, c);
  out.accuracy = profile_->accuracy(i, c);
  out.start = static_cast<double>(i) * T + lag_;
  out.upload_delay = upload_delay(static_cast<double>(out.size), *trace_, out.start, options_.rtt);
  out.lag = lag_update(lag_, out.upload_delay, T);
  out.throughput = static_cast<double>(out.size) / (out.upload_delay - options_.rtt);

  lag_ = out.lag;
  ++next_chunk_;

  push_history(state_.sizes, static_cast<double>(out.size));
  push_history(state_.throughputs, out.throughput);
  push_history(state_.delays, out.upload_delay);
  push_history(state_.buffers, out.lag);
  push_history(state_.resolutions, cfg.resolution_scale);
  push_history(state_.fps, cfg.fps);
  push_history(state_.qps, cfg.qp);
  state_.buffer = lag_;
  state_.chunk_idx = next_chunk_;
  state_.motion = map_for(i);

  return {out, state_};
}

std::vector<CdfPoint> empirical_cdf(std::vector<double> values) {
  std::vector<CdfPoint> out;
  if (values.empty()) return out;
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i + 1 < values.size() && values[i + 1] == values[i]) continue;
    out.push_back({values[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

SessionMetrics summarize(std::vector<ChunkOutcome> outcomes) {
  SessionMetrics m;
  m.outcomes = std::move(outcomes);
  if (m.outcomes.empty()) return m;
  std::vector<double> acc;
  std::vector<double> lag;
  for (const auto& o : m.outcomes) {
    acc.push_back(o.accuracy);
    lag.push_back(o.lag);
  }
  double sa = 0.0;
  double sl = 0.0;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    sa += acc[i];
    sl += lag[i];
  }
  m.mean_accuracy = sa / static_cast<double>(acc.size());
  m.mean_lag = sl / static_cast<double>(lag.size());
  m.accuracy_cdf = empirical_cdf(std::move(acc));
  m.lag_cdf = empirical_cdf(std::move(lag));
  return m;
}

SessionMetrics run_session(Policy& policy, Env& env) {
  policy.reset();
  StateObservation state = env.reset();
  std::vector<ChunkOutcome> outcomes;
  outcomes.reserve(env.n_chunks());
  while (!env.done()) {
    auto step = env.step(policy.act(state));
    outcomes.push_back(step.outcome);
    state = std::move(step.next);
  }
  return summarize(std::move(outcomes));
}

}  // namespace vastream
