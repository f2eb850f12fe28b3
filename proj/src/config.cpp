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

#include "vastream/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>

#include "vastream/error.hpp"

namespace vastream {

namespace {

template <typename T, typename Less>
std::vector<T> checked_sorted(std::span<const T> values, std::span<const T> domain, Less less,
                              const char* knob) {
  if (values.empty()) throw InvalidArgument(std::string("empty knob set: ") + knob);
  std::vector<T> out(values.begin(), values.end());
  for (const T& v : out) {
    if (std::find(domain.begin(), domain.end(), v) == domain.end()) {
      throw InvalidArgument(std::string("value outside the ") + knob + " domain");
    }
  }
  std::sort(out.begin(), out.end(), less);
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw InvalidArgument(std::string("duplicate value in ") + knob + " set");
  }
  return out;
}

}  // namespace

std::string to_string(const Configuration& c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "#%d(r=%g,f=%d,qp=%d)", c.id, c.resolution_scale, c.fps, c.qp);
  return buf;
}

int ConfigSpace::find(double resolution_scale, int fps, int qp) const noexcept {
  for (const auto& c : configs_) {
    if (c.resolution_scale == resolution_scale && c.fps == fps && c.qp == qp) return c.id;
  }
  return -1;
}

ConfigSpace build_config_space(std::span<const double> resolutions, std::span<const int> fps_set,
                               std::span<const int> qp_set) {
  ConfigSpace space;
  space.resolutions_ =
      checked_sorted(resolutions, std::span<const double>(kResolutionDomain), std::greater<>{},
                     "resolution");
  space.fps_ = checked_sorted(fps_set, std::span<const int>(kFpsDomain), std::greater<>{}, "fps");
  space.qp_ = checked_sorted(qp_set, std::span<const int>(kQpDomain), std::less<>{}, "qp");

  int id = 0;
  for (double r : space.resolutions_) {
    for (int f : space.fps_) {
      for (int q : space.qp_) space.configs_.push_back({r, f, q, id++});
    }
  }
  return space;
}

ConfigSpace default_config_space() {
  return build_config_space(kResolutionDomain, kFpsDomain, kQpDomain);
}

}  // namespace vastream
