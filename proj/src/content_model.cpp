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

#include "vastream/content_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "vastream/error.hpp"

namespace vastream {

namespace {

void check_complexity(double m) {
  if (!(m >= 0.0 && m <= 1.0)) {
    throw InvalidArgument("content complexity must lie in [0, 1], got " + std::to_string(m));
  }
}

std::string cell_name(std::size_t chunk, std::size_t config) {
  return "[chunk " + std::to_string(chunk) + ", config " + std::to_string(config) + "]";
}

}  // namespace

void ContentModel::validate() const {
  if (base_size_bytes <= 0) throw InvalidArgument("base_size_bytes must be positive");
  if (!(qp_halving_step > 0.0)) throw InvalidArgument("qp halving step must be positive");
  for (double v : {size_res_exp, size_fps_exp, qp_halving_step, acc_res_offset, acc_res_slope,
                   acc_qp_slope}) {
    if (!std::isfinite(v)) throw InvalidArgument("content model coefficients must be finite");
  }
}

std::int64_t encoded_size(const ContentModel& model, const Configuration& c, double m) {
  check_complexity(m);
  const double bytes = static_cast<double>(model.base_size_bytes) *
                       std::pow(c.resolution_scale, model.size_res_exp) *
                       std::pow(c.fps / static_cast<double>(kMaxFps), model.size_fps_exp) *
                       std::exp2(-(c.qp - kMinQp) / model.qp_halving_step) * (0.5 + m);
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(bytes + 0.5)));
}

double accuracy_of(const ContentModel& model, const Configuration& c, double m) {
  check_complexity(m);
  const double acc = std::pow(c.resolution_scale, model.acc_res_offset + model.acc_res_slope * m) *
                     std::pow(c.fps / static_cast<double>(kMaxFps), m) *
                     (1.0 - model.acc_qp_slope * (c.qp - kMinQp));
  return std::clamp(acc, 0.0, 1.0);
}

VideoProfile::VideoProfile(std::size_t n_chunks, std::size_t n_configs,
                           std::vector<double> complexity, std::vector<double> accuracy,
                           std::vector<std::int64_t> size_bytes)
    : n_chunks_(n_chunks),
      n_configs_(n_configs),
      complexity_(std::move(complexity)),
      accuracy_(std::move(accuracy)),
      size_(std::move(size_bytes)) {
  if (n_chunks_ == 0 || n_configs_ == 0) throw InvalidArgument("profile must not be empty");
  if (accuracy_.size() != n_chunks_ * n_configs_ || size_.size() != n_chunks_ * n_configs_) {
    throw InvalidArgument("profile table size does not match chunks x configs");
  }
  if (!complexity_.empty() && complexity_.size() != n_chunks_) {
    throw InvalidArgument("complexity length does not match chunk count");
  }
  for (double m : complexity_) check_complexity(m);
  for (std::size_t i = 0; i < n_chunks_; ++i) {
    for (std::size_t c = 0; c < n_configs_; ++c) {
      const double a = accuracy_[i * n_configs_ + c];
      if (!(a >= 0.0 && a <= 1.0)) {
        throw InvalidArgument("accuracy outside [0, 1] at " + cell_name(i, c));
      }
      if (size_[i * n_configs_ + c] <= 0) {
        throw InvalidArgument("non-positive size at " + cell_name(i, c));
      }
    }
  }
}

VideoProfile VideoProfile::slice(std::size_t first, std::size_t count) const {
  if (count == 0 || first + count > n_chunks_) throw InvalidArgument("profile slice out of range");
  const auto lo = static_cast<std::ptrdiff_t>(first * n_configs_);
  const auto hi = static_cast<std::ptrdiff_t>((first + count) * n_configs_);
  std::vector<double> complexity;
  if (!complexity_.empty()) {
    complexity.assign(complexity_.begin() + static_cast<std::ptrdiff_t>(first),
                      complexity_.begin() + static_cast<std::ptrdiff_t>(first + count));
  }
  return VideoProfile(count, n_configs_, std::move(complexity),
                      std::vector<double>(accuracy_.begin() + lo, accuracy_.begin() + hi),
                      std::vector<std::int64_t>(size_.begin() + lo, size_.begin() + hi));
}

void VideoProfile::check_monotone(const ConfigSpace& space) const {
  if (space.size() != n_configs_) throw InvalidArgument("config space does not match profile");
  const auto& rs = space.resolutions();
  const auto& fs = space.fps_set();
  const auto& qs = space.qp_set();
  const std::size_t nf = fs.size();
  const std::size_t nq = qs.size();
  auto id = [&](std::size_t ri, std::size_t fi, std::size_t qi) { return (ri * nf + fi) * nq + qi; };
  for (std::size_t i = 0; i < n_chunks_; ++i) {
    for (std::size_t ri = 0; ri < rs.size(); ++ri) {
      for (std::size_t fi = 0; fi < nf; ++fi) {
        for (std::size_t qi = 0; qi < nq; ++qi) {
          const std::size_t c = id(ri, fi, qi);
          // resolutions are stored descending: the next one is lower
          if (ri + 1 < rs.size()) {
            const std::size_t lower = id(ri + 1, fi, qi);
            if (accuracy(i, lower) > accuracy(i, c) || size_bytes(i, lower) > size_bytes(i, c)) {
              throw InvalidArgument("resolution monotonicity broken at " + cell_name(i, lower));
            }
          }
          if (qi + 1 < nq && size_bytes(i, id(ri, fi, qi + 1)) > size_bytes(i, c)) {
            throw InvalidArgument("qp monotonicity broken at " + cell_name(i, id(ri, fi, qi + 1)));
          }
        }
      }
    }
  }
}

std::vector<double> random_walk_complexity(std::uint64_t seed, std::size_t n,
                                           const RandomWalkComplexity& walk) {
  if (!(walk.max_step >= 0.0)) throw InvalidArgument("random walk step must be non-negative");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> out;
  out.reserve(n);
  double m = walk.start ? *walk.start : unit(rng);
  check_complexity(m);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(m);
    m = std::clamp(m + walk.max_step * (2.0 * unit(rng) - 1.0), 0.0, 1.0);
  }
  return out;
}

VideoProfile generate_profile(const ContentModel& model, std::size_t n_chunks,
                              const ConfigSpace& space, const ComplexitySource& source) {
  model.validate();
  if (n_chunks == 0) throw InvalidArgument("n_chunks must be at least 1");
  if (space.empty()) throw InvalidArgument("config space is empty");

  std::vector<double> complexity;
  if (source.walk) {
    complexity = random_walk_complexity(model.seed, n_chunks, *source.walk);
  } else {
    if (source.values.size() < n_chunks) {
      throw InvalidArgument("complexity source shorter than n_chunks");
    }
    complexity.assign(source.values.begin(),
                      source.values.begin() + static_cast<std::ptrdiff_t>(n_chunks));
  }

  std::vector<double> acc;
  std::vector<std::int64_t> size;
  acc.reserve(n_chunks * space.size());
  size.reserve(n_chunks * space.size());
  for (double m : complexity) {
    for (const auto& c : space) {
      acc.push_back(accuracy_of(model, c, m));
      size.push_back(encoded_size(model, c, m));
    }
  }
  return VideoProfile(n_chunks, space.size(), std::move(complexity), std::move(acc),
                      std::move(size));
}

}  // namespace vastream
