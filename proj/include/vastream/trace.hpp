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

#ifndef VASTREAM_TRACE_HPP_
#define VASTREAM_TRACE_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

namespace vastream {

struct TraceSample {
  double t = 0.0;          // seconds
  double bandwidth = 0.0;  // bytes per second

  friend bool operator==(const TraceSample&, const TraceSample&) = default;
};

// Piecewise-constant bandwidth over [0, duration); replayed cyclically.
class NetworkTrace {
 public:
  NetworkTrace() = default;
  // Timestamps must start at 0 and increase strictly; bandwidths must be
  // positive. The last sample lasts as long as the gap before it (1 s for a
  // single-sample trace) unless `duration` is given.
  explicit NetworkTrace(std::vector<TraceSample> samples, double duration = 0.0);

  const std::vector<TraceSample>& samples() const noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }
  double duration() const noexcept { return duration_; }
  double min_bandwidth() const noexcept;
  double max_bandwidth() const noexcept;
  double mean_bandwidth() const noexcept;  // time-weighted

  // Bandwidth in effect at time t (wrapped into [0, duration)).
  double bandwidth_at(double t) const;

  // Bytes the link carries over [t0, t1], t1 >= t0 >= 0.
  double transferred_bytes(double t0, double t1) const;

  // Seconds needed to push `bytes` starting at `start`.
  double drain_time(double bytes, double start) const;

  // Same samples rotated so that the trace starts `offset` seconds later.
  NetworkTrace shifted(double offset) const;

  friend bool operator==(const NetworkTrace&, const NetworkTrace&) = default;

 private:
  std::size_t segment_index(double wrapped_t) const;
  double segment_end(std::size_t i) const;

  std::vector<TraceSample> samples_;
  double duration_ = 0.0;
  double cycle_bytes_ = 0.0;
};

// Affine map sending the minimum bandwidth to `lo` and the maximum to `hi`
// (bytes/s). A constant trace maps to (lo + hi) / 2. Throws InvalidArgument
// when lo >= hi.
NetworkTrace scale_trace(const NetworkTrace& trace, double lo, double hi);

// Text format: `t_seconds,bandwidth_bytes_per_sec` per line, '#' comments.
NetworkTrace parse_trace(const std::string& text);
NetworkTrace load_trace(const std::filesystem::path& path);
std::string format_trace(const NetworkTrace& trace);
void save_trace(const NetworkTrace& trace, const std::filesystem::path& path);

inline constexpr double kBytesPerMbit = 125'000.0;

}  // namespace vastream

#endif  // VASTREAM_TRACE_HPP_
