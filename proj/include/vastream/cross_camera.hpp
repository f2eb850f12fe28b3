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

#ifndef VASTREAM_CROSS_CAMERA_HPP_
#define VASTREAM_CROSS_CAMERA_HPP_

#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "vastream/motion.hpp"

namespace vastream {

struct Visit {
  std::string object_id;
  std::string camera_id;
  double enter_t = 0.0;
  double exit_t = 0.0;
  int exit_dir = 0;  // sector 0..7, same convention as direction_sector
  friend bool operator==(const Visit&, const Visit&) = default;
};

class TrajectoryLog {
 public:
  TrajectoryLog() = default;
  // Checks enter_t <= exit_t, sectors in range and that each object's visits
  // appear in non-decreasing enter_t order.
  explicit TrajectoryLog(std::vector<Visit> visits);

  const std::vector<Visit>& visits() const noexcept { return visits_; }
  bool empty() const noexcept { return visits_.empty(); }
  // Sorted, distinct.
  std::vector<std::string> cameras() const;
  // Each object's visits in order, objects sorted by id.
  const std::vector<std::vector<const Visit*>>& by_object() const noexcept { return objects_; }

 private:
  std::vector<Visit> visits_;
  std::vector<std::vector<const Visit*>> objects_;
};

TrajectoryLog parse_trajectory_log(const std::string& text);
TrajectoryLog load_trajectory_log(const std::filesystem::path& path);
std::string format_trajectory_log(const TrajectoryLog& log);

// Fraction of objects seen by `source` that are seen by `target` at a later
// visit. Throws InvalidArgument when `source` never appears.
double spatial_correlation(const TrajectoryLog& log, const std::string& source,
                           const std::string& target);

// Transit times enter_t(target) - exit_t(source) over consecutive visits.
std::vector<double> transit_times(const TrajectoryLog& log, const std::string& source,
                                  const std::string& target);

// Fraction of source->target arrivals whose transit lies in [t1, t2]; 0 when
// there are none.
double temporal_correlation(const TrajectoryLog& log, const std::string& source,
                            const std::string& target, double t1,
                            double t2 = std::numeric_limits<double>::infinity());

struct ShareRule {
  std::string source;
  std::string target;
  double t1 = 0.0;
  double t2 = 0.0;
  int exit_row = 0;  // X_D
  int exit_col = 0;  // Y_D
  int direction = 0;
  double spatial = 0.0;
  double temporal = 0.0;
  double mean_transit = 0.0;
  std::size_t arrivals = 0;
};

struct SelectOptions {
  double spatial_threshold = 0.7;
  double temporal_threshold = 0.9;
  double window_step = 0.5;
  // Source camera microblock grid used to place exit points.
  int grid_rows = 0;
  int grid_cols = 0;
};

// Microblock on the grid border reached from the centre along `sector`.
void sector_exit_point(int sector, int rows, int cols, int& row, int& col);

std::vector<ShareRule> select_sources(const TrajectoryLog& log, const std::string& target,
                                      const SelectOptions& options = {});

struct CorrelationEntry {
  std::string source;
  std::string target;
  double spatial = 0.0;
  double mean_transit = 0.0;  // 0 without arrivals
  std::size_t arrivals = 0;
};

// Every ordered pair of distinct cameras, sorted by (source, target).
std::vector<CorrelationEntry> correlation_matrix(const TrajectoryLog& log);

std::string correlation_report_json(std::span<const CorrelationEntry> entries,
                                    std::span<const ShareRule> rules);

// Linear decay toward the rule's exit point. `dominant` holds the dominant
// sector per cell (kNoDirection for none), as from DegreeGrid.
MotionFeatureMap filter_map(const MotionFeatureMap& map, std::span<const std::int8_t> dominant,
                            const ShareRule& rule);

struct SharedMap {
  MotionFeatureMap map;
  double spatial = 0.0;
  double temporal = 0.0;
};

MotionFeatureMap aggregate_shared_maps(const MotionFeatureMap& target,
                                       std::span<const SharedMap> shared);

// Target camera's map stream with the source camera's filtered maps folded
// in: target chunk i receives every source chunk j with (i - j) * T inside
// the rule's window, equally weighted (one rule, so one (S, T) pair).
std::vector<MotionFeatureMap> shared_map_stream(std::span<const MotionFeatureMap> target,
                                                const MotionLog& source, const ShareRule& rule,
                                                int frames_per_chunk, double chunk_seconds,
                                                int sigma = 20);

}  // namespace vastream

#endif  // VASTREAM_CROSS_CAMERA_HPP_
