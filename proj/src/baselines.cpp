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

#include "vastream/baselines.hpp"

#include <algorithm>
#include <numeric>

#include "vastream/error.hpp"

namespace vastream {

FixedPolicy::FixedPolicy(int config_id, std::string name)
    : config_id_(config_id), name_(std::move(name)) {
  if (config_id < 0) throw InvalidArgument("config id must be non-negative");
}

void ProfilingSchedule::validate() const {
  if (profile_segment < 1 || profile_segment >= window) {
    throw InvalidArgument("profile segment must be at least 1 and shorter than the window");
  }
  if (top_k < 1) throw InvalidArgument("top_k must be at least 1");
  if (predictor_samples < 1) throw InvalidArgument("predictor needs at least one sample");
}

ProfilingPolicy::ProfilingPolicy(ProfilingSchedule schedule,
                                 std::shared_ptr<const VideoProfile> profile, double chunk_seconds,
                                 double rtt, std::string name)
    : schedule_(schedule),
      profile_(std::move(profile)),
      chunk_seconds_(chunk_seconds),
      rtt_(rtt),
      name_(std::move(name)) {
  schedule_.validate();
  if (!profile_ || profile_->n_chunks() == 0) throw InvalidArgument("profiling needs a profile");
  if (!(chunk_seconds > 0.0) || rtt < 0.0) throw InvalidArgument("bad timing parameters");
}

void ProfilingPolicy::reset() {
  candidates_.clear();
  mean_size_.clear();
  cheapest_ = 0;
}

double ProfilingPolicy::predicted_throughput(const StateObservation& state) const {
  double sum = 0.0;
  int n = 0;
  for (auto it = state.throughputs.rbegin();
       it != state.throughputs.rend() && n < schedule_.predictor_samples; ++it) {
    if (*it <= 0.0) break;  // zero padding before the first chunk
    sum += *it;
    ++n;
  }
  return n == 0 ? 0.0 : sum / n;
}

double ProfilingPolicy::predicted_delay(int config, double throughput) const {
  return rtt_ + mean_size_[static_cast<std::size_t>(config)] / throughput;
}

void ProfilingPolicy::profile(std::size_t first_chunk, std::size_t count, double throughput) {
  const std::size_t nc = profile_->n_configs();
  std::vector<double> acc(nc, 0.0);
  mean_size_.assign(nc, 0.0);
  for (std::size_t i = first_chunk; i < first_chunk + count; ++i) {
    for (std::size_t c = 0; c < nc; ++c) {
      acc[c] += profile_->accuracy(i, c);
      mean_size_[c] += static_cast<double>(profile_->size_bytes(i, c));
    }
  }
  for (std::size_t c = 0; c < nc; ++c) {
    acc[c] /= static_cast<double>(count);
    mean_size_[c] /= static_cast<double>(count);
  }
  cheapest_ = static_cast<int>(std::min_element(mean_size_.begin(), mean_size_.end()) -
                               mean_size_.begin());
  std::vector<int> order(nc);
  std::iota(order.begin(), order.end(), 0);
  // most accurate first; cheaper first among equals, then lower id
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (acc[a] != acc[b]) return acc[a] > acc[b];
    return mean_size_[a] < mean_size_[b];
  });
  candidates_.clear();
  for (int c : order) {
    if (static_cast<int>(candidates_.size()) >= schedule_.top_k) break;
    if (throughput > 0.0 && predicted_delay(c, throughput) <= chunk_seconds_) candidates_.push_back(c);
  }
}

int ProfilingPolicy::act(const StateObservation& state) {
  const std::size_t i = state.chunk_idx;
  const auto window = static_cast<std::size_t>(schedule_.window);
  const auto segment = static_cast<std::size_t>(schedule_.profile_segment);
  const std::size_t pos = i % window;
  if (pos < segment) return 0;  // golden: ground truth for the profile

  const double throughput = predicted_throughput(state);
  if (pos == segment || mean_size_.empty()) {
    const std::size_t first = i - pos;
    const std::size_t count = std::min(segment, profile_->n_chunks() - first);
    profile(first, count, throughput);
  }
  if (throughput <= 0.0) return cheapest_;
  for (int c : candidates_) {
    if (predicted_delay(c, throughput) <= chunk_seconds_) return c;
  }
  return cheapest_;
}

}  // namespace vastream
