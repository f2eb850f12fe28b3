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

#ifndef VASTREAM_EXPERT_HPP_
#define VASTREAM_EXPERT_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "vastream/content_model.hpp"
#include "vastream/simulator.hpp"
#include "vastream/trace.hpp"

namespace vastream {

enum class LagRounding {
  kCeil,    // next grid cell up; a plan's grid lag never understates its real lag
  kHalfUp,  // nearest grid cell, ties up
};

// Discretization of the lag axis: cells j = 0 .. floor(max_lag / step),
// cell j standing for a lag of j * step seconds.
struct LagGrid {
  double step = 0.1;
  double max_lag = 1.0;
  LagRounding rounding = LagRounding::kCeil;

  void validate() const;
  std::size_t cells() const;
  double value(std::size_t cell) const { return static_cast<double>(cell) * step; }
  // Grid cell for a non-negative lag, or nullopt when it lands beyond the
  // last cell.
  std::optional<std::size_t> quantize(double lag) const;
};

// Upload delays U_i(c) with every chunk starting on time at i * T.
class DelayTable {
 public:
  DelayTable(std::size_t n_chunks, std::size_t n_configs, std::vector<double> delays);
  std::size_t n_chunks() const noexcept { return n_chunks_; }
  std::size_t n_configs() const noexcept { return n_configs_; }
  double at(std::size_t chunk, std::size_t config) const {
    return delays_[chunk * n_configs_ + config];
  }

 private:
  std::size_t n_chunks_;
  std::size_t n_configs_;
  std::vector<double> delays_;
};

// Upload delays U_i(c | j) for a chunk whose upload starts j grid cells
// late, at i * T + j * step.
class LagAwareDelays {
 public:
  LagAwareDelays(std::size_t n_chunks, std::size_t n_cells, std::size_t n_configs,
                 std::vector<double> delays);
  std::size_t n_chunks() const noexcept { return n_chunks_; }
  std::size_t n_cells() const noexcept { return n_cells_; }
  std::size_t n_configs() const noexcept { return n_configs_; }
  double at(std::size_t chunk, std::size_t cell, std::size_t config) const {
    return delays_[(chunk * n_cells_ + cell) * n_configs_ + config];
  }

 private:
  std::size_t n_chunks_;
  std::size_t n_cells_;
  std::size_t n_configs_;
  std::vector<double> delays_;
};

DelayTable nominal_delays(const VideoProfile& profile, const NetworkTrace& trace,
                          double chunk_seconds, double rtt);
LagAwareDelays lag_aware_delays(const VideoProfile& profile, const NetworkTrace& trace,
                                const LagGrid& grid, double chunk_seconds, double rtt);

struct ExpertPlan {
  std::vector<int> config_ids;
  double total_accuracy = 0.0;
  std::vector<double> lags;  // per chunk; grid values for the DP, exact for brute force
};

// Offline-optimal plan by dynamic programming over (chunk, lag cell):
// maximizes total accuracy while every quantized lag stays within
// grid.max_lag. Cell updates keep the first writer (configs in id order,
// previous-lag cells from high to low); the final cell is the best one,
// lowest lag on ties. Throws Infeasible when some chunk has no admissible
// cell and InvalidArgument on an empty profile or mismatched tables.
ExpertPlan expert_plan(const VideoProfile& profile, const DelayTable& delays, const LagGrid& grid,
                       double chunk_seconds = 1.0);
ExpertPlan expert_plan(const VideoProfile& profile, const LagAwareDelays& delays,
                       const LagGrid& grid, double chunk_seconds = 1.0);

// Exhaustive search over every config sequence with the exact lag
// recursion; ties go to the lexicographically smallest id sequence.
// Refuses instances with more than `max_sequences` sequences.
ExpertPlan brute_force_plan(const VideoProfile& profile, const DelayTable& delays, double max_lag,
                            double chunk_seconds = 1.0, double max_sequences = 1e7);

// Replays a fixed per-chunk plan.
class PlanPolicy : public Policy {
 public:
  explicit PlanPolicy(std::vector<int> config_ids, std::string name = "expert");
  int act(const StateObservation& state) override;
  std::string name() const override { return name_; }

 private:
  std::vector<int> ids_;
  std::string name_;
};

struct DemoStep {
  StateObservation state;
  int action = 0;
};

struct Demonstration {
  std::vector<DemoStep> steps;
  SessionMetrics replay;
};

// Streams the plan through `env` (reset first) and records every decision.
Demonstration extract_demonstrations(const ExpertPlan& plan, Env& env);

// Plan CSV: `chunk_idx,config_id`.
std::string format_plan_csv(const ExpertPlan& plan);
std::vector<int> parse_plan_csv(const std::string& text);

}  // namespace vastream

#endif  // VASTREAM_EXPERT_HPP_
