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

#ifndef VASTREAM_BASELINES_HPP_
#define VASTREAM_BASELINES_HPP_

#include <memory>
#include <string>
#include <vector>

#include "vastream/config.hpp"
#include "vastream/content_model.hpp"
#include "vastream/simulator.hpp"

namespace vastream {

class FixedPolicy : public Policy {
 public:
  explicit FixedPolicy(int config_id, std::string name = "fixed");
  int act(const StateObservation&) override { return config_id_; }
  std::string name() const override { return name_; }

 private:
  int config_id_;
  std::string name_;
};

struct ProfilingSchedule {
  int window = 16;
  int profile_segment = 4;
  int top_k = 5;
  int predictor_samples = 4;  // trailing throughput samples averaged

  void validate() const;
};

// Chameleon-style periodic profiling. The first `profile_segment` chunks of
// every window go out at the golden configuration; at the end of the segment
// every configuration is scored on the segment's true profile rows, and the
// `top_k` most accurate ones whose predicted delay fits in T are retained.
// Each remaining chunk of the window takes the most accurate retained
// configuration that still fits under the current throughput prediction,
// falling back to the cheapest configuration overall.
class ProfilingPolicy : public Policy {
 public:
  ProfilingPolicy(ProfilingSchedule schedule, std::shared_ptr<const VideoProfile> profile,
                  double chunk_seconds = 1.0, double rtt = 0.08, std::string name = "profiling");
  void reset() override;
  int act(const StateObservation& state) override;
  std::string name() const override { return name_; }

  // Candidates retained by the most recent profile, most accurate first.
  const std::vector<int>& candidates() const noexcept { return candidates_; }
  // Trailing-mean throughput (bytes/s) from the state's history; 0 when none.
  double predicted_throughput(const StateObservation& state) const;

 private:
  void profile(std::size_t first_chunk, std::size_t count, double throughput);
  double predicted_delay(int config, double throughput) const;

  ProfilingSchedule schedule_;
  std::shared_ptr<const VideoProfile> profile_;
  double chunk_seconds_;
  double rtt_;
  std::string name_;
  std::vector<double> mean_size_;
  std::vector<int> candidates_;
  int cheapest_ = 0;
};

}  // namespace vastream

#endif  // VASTREAM_BASELINES_HPP_
