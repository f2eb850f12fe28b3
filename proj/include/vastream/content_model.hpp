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

#ifndef VASTREAM_CONTENT_MODEL_HPP_
#define VASTREAM_CONTENT_MODEL_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vastream/config.hpp"

namespace vastream {

// Closed-form stand-in for an encoder plus detector. Given a configuration
// and the content complexity m of a chunk it yields the encoded chunk size
// and the detection accuracy relative to the golden configuration.
//
//   size = base_size_bytes * r^size_res_exp * (f/30)^size_fps_exp
//          * 2^(-(qp-21)/qp_halving_step) * (0.5 + m)
//   acc  = clamp01( r^(acc_res_offset + acc_res_slope*m) * (f/30)^m
//                   * (1 - acc_qp_slope*(qp-21)) )
struct ContentModel {
  std::int64_t base_size_bytes = 2'500'000;
  double size_res_exp = 1.5;
  double size_fps_exp = 0.6;
  double qp_halving_step = 6.0;
  double acc_res_offset = 0.3;
  double acc_res_slope = 0.5;
  double acc_qp_slope = 0.015;
  std::uint64_t seed = 1;

  // Throws InvalidArgument when a field breaks its invariant.
  void validate() const;
};

// Encoded size in bytes, rounded half-up. Throws InvalidArgument unless
// m is in [0, 1].
std::int64_t encoded_size(const ContentModel& model, const Configuration& c, double m);

// Accuracy in [0, 1]; exactly 1 for the golden configuration.
double accuracy_of(const ContentModel& model, const Configuration& c, double m);

// Per-chunk x per-configuration accuracy and size tables.
class VideoProfile {
 public:
  VideoProfile() = default;
  // Tables are row-major [chunk][config]. Validates every invariant that
  // does not depend on knob values; `complexity` may be empty when unknown.
  VideoProfile(std::size_t n_chunks, std::size_t n_configs, std::vector<double> complexity,
               std::vector<double> accuracy, std::vector<std::int64_t> size_bytes);

  std::size_t n_chunks() const noexcept { return n_chunks_; }
  std::size_t n_configs() const noexcept { return n_configs_; }

  double accuracy(std::size_t chunk, std::size_t config) const {
    return accuracy_[chunk * n_configs_ + config];
  }
  std::int64_t size_bytes(std::size_t chunk, std::size_t config) const {
    return size_[chunk * n_configs_ + config];
  }
  std::span<const double> accuracy_row(std::size_t chunk) const {
    return std::span<const double>(accuracy_).subspan(chunk * n_configs_, n_configs_);
  }
  std::span<const std::int64_t> size_row(std::size_t chunk) const {
    return std::span<const std::int64_t>(size_).subspan(chunk * n_configs_, n_configs_);
  }
  // Empty when the profile was loaded without a complexity file.
  std::span<const double> complexity() const noexcept { return complexity_; }

  // Rows [first, first + count) as a new profile.
  VideoProfile slice(std::size_t first, std::size_t count) const;

  // Checks the knob monotonicity invariants against `space`. Throws
  // InvalidArgument naming the first offending cell.
  void check_monotone(const ConfigSpace& space) const;

  friend bool operator==(const VideoProfile&, const VideoProfile&) = default;

 private:
  std::size_t n_chunks_ = 0;
  std::size_t n_configs_ = 0;
  std::vector<double> complexity_;
  std::vector<double> accuracy_;
  std::vector<std::int64_t> size_;
};

// Where per-chunk complexity comes from: a seeded bounded random walk on
// [0, 1] (seed taken from the model), or explicit values.
struct RandomWalkComplexity {
  double max_step = 0.1;
  std::optional<double> start;  // uniform draw when unset
};

struct ComplexitySource {
  std::optional<RandomWalkComplexity> walk;
  std::vector<double> values;

  static ComplexitySource random_walk(RandomWalkComplexity w = {}) { return {w, {}}; }
  static ComplexitySource fixed(std::vector<double> v) { return {std::nullopt, std::move(v)}; }
};

// Complexity sequence of length n from a seeded random walk.
std::vector<double> random_walk_complexity(std::uint64_t seed, std::size_t n,
                                           const RandomWalkComplexity& walk);

VideoProfile generate_profile(const ContentModel& model, std::size_t n_chunks,
                              const ConfigSpace& space, const ComplexitySource& source);

}  // namespace vastream

#endif  // VASTREAM_CONTENT_MODEL_HPP_
