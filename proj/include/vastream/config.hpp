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

#ifndef VASTREAM_CONFIG_HPP_
#define VASTREAM_CONFIG_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace vastream {

// One encoding knob combination. `id` is the index in the owning
// ConfigSpace.
struct Configuration {
  double resolution_scale = 1.0;
  int fps = 30;
  int qp = 21;
  int id = 0;

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

std::string to_string(const Configuration& c);

// Allowed knob domains. Canonical enumeration order is resolution
// descending, fps descending, qp ascending.
inline constexpr double kResolutionDomain[] = {1.0, 0.8, 0.6, 0.5, 0.4, 0.3};
inline constexpr int kFpsDomain[] = {30, 15, 10, 5, 2, 1};
inline constexpr int kQpDomain[] = {21, 25, 29, 33, 37, 41};

inline constexpr int kMaxFps = 30;
inline constexpr int kMinQp = 21;
inline constexpr int kMaxQp = 41;

// Ordered, duplicate-free cartesian product of knob sets.
class ConfigSpace {
 public:
  ConfigSpace() = default;

  std::size_t size() const noexcept { return configs_.size(); }
  bool empty() const noexcept { return configs_.empty(); }
  const Configuration& operator[](std::size_t id) const { return configs_[id]; }
  const Configuration& at(std::size_t id) const { return configs_.at(id); }
  std::span<const Configuration> configs() const noexcept { return configs_; }
  auto begin() const noexcept { return configs_.begin(); }
  auto end() const noexcept { return configs_.end(); }

  // Id of (resolution, fps, qp) or -1 when absent.
  int find(double resolution_scale, int fps, int qp) const noexcept;

  const std::vector<double>& resolutions() const noexcept { return resolutions_; }
  const std::vector<int>& fps_set() const noexcept { return fps_; }
  const std::vector<int>& qp_set() const noexcept { return qp_; }

 private:
  friend ConfigSpace build_config_space(std::span<const double>, std::span<const int>,
                                        std::span<const int>);
  std::vector<Configuration> configs_;
  std::vector<double> resolutions_;
  std::vector<int> fps_;
  std::vector<int> qp_;
};

// Builds the product of the given knob sets in canonical order, whatever
// order the inputs come in. Throws InvalidArgument on an empty set, a
// duplicate, or a value outside the knob domain.
ConfigSpace build_config_space(std::span<const double> resolutions, std::span<const int> fps_set,
                               std::span<const int> qp_set);

// The full 6 x 6 x 6 space.
ConfigSpace default_config_space();

}  // namespace vastream

#endif  // VASTREAM_CONFIG_HPP_
