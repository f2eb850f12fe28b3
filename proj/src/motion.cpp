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

#include "vastream/motion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vastream/error.hpp"
#include "vastream/text.hpp"

namespace vastream {

int motion_degree(const MotionVector& mv) noexcept {
  return std::abs(mv.dst_x - mv.src_x) + std::abs(mv.dst_y - mv.src_y);
}

int direction_sector(int dx, int dy) noexcept {
  if (dx == 0 && dy == 0) return kNoDirection;
  double deg = std::atan2(static_cast<double>(dy), static_cast<double>(dx)) * 180.0 /
               std::numbers::pi;
  if (deg < 0.0) deg += 360.0;
  return static_cast<int>(std::floor((deg + 22.5) / 45.0)) % kSectors;
}

int direction_sector(const MotionVector& mv) noexcept {
  return direction_sector(mv.dst_x - mv.src_x, mv.dst_y - mv.src_y);
}

int microblocks(int pixels) noexcept { return (pixels + kMicroblock - 1) / kMicroblock; }

DegreeGrid::DegreeGrid(int w, int h) : width(w), height(h) {
  if (w < 0 || h < 0) throw InvalidArgument("grid dimensions must be non-negative");
  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  total.assign(n, 0);
  for (auto& g : per_direction) g.assign(n, 0);
}

int DegreeGrid::dominant_direction(std::size_t cell) const noexcept {
  int best = kNoDirection;
  std::uint32_t best_v = 0;
  for (int d = 0; d < kSectors; ++d) {
    if (per_direction[d][cell] > best_v) {
      best_v = per_direction[d][cell];
      best = d;
    }
  }
  return best;
}

std::vector<std::int8_t> DegreeGrid::dominant_directions() const {
  std::vector<std::int8_t> out(total.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = static_cast<std::int8_t>(dominant_direction(i));
  }
  return out;
}

DegreeGrid& DegreeGrid::operator+=(const DegreeGrid& other) {
  if (other.width != width || other.height != height) {
    throw InvalidArgument("degree grids differ in size");
  }
  for (std::size_t i = 0; i < total.size(); ++i) total[i] += other.total[i];
  for (int d = 0; d < kSectors; ++d) {
    for (std::size_t i = 0; i < total.size(); ++i) per_direction[d][i] += other.per_direction[d][i];
  }
  return *this;
}

MotionFeatureMap::MotionFeatureMap(int w, int h, std::uint8_t fill) : width(w), height(h) {
  if (w < 0 || h < 0) throw InvalidArgument("map dimensions must be non-negative");
  values.assign(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill);
}

namespace {

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }

void check_vector(const MotionVector& mv, int frame_w, int frame_h) {
  const auto valid_side = [](int s) { return s >= 4 && s <= 16 && s % kMicroblock == 0; };
  if (!valid_side(mv.block_w) || !valid_side(mv.block_h)) {
    throw InvalidArgument("block sides must be multiples of 4 in [4, 16] (frame " +
                          std::to_string(mv.frame_idx) + ")");
  }
  const auto inside = [&](int x, int y) { return x >= 0 && y >= 0 && x < frame_w && y < frame_h; };
  if (!inside(mv.src_x, mv.src_y) || !inside(mv.dst_x, mv.dst_y)) {
    throw InvalidArgument("motion vector outside the frame (frame " +
                          std::to_string(mv.frame_idx) + ")");
  }
}

}  // namespace

DegreeGrid accumulate(std::span<const MotionVector> mvs, int frame_w, int frame_h) {
  if (frame_w <= 0 || frame_h <= 0) throw InvalidArgument("frame size must be positive");
  DegreeGrid grid(microblocks(frame_w), microblocks(frame_h));
  for (const auto& mv : mvs) {
    check_vector(mv, frame_w, frame_h);
    const auto degree = static_cast<std::uint32_t>(motion_degree(mv));
    if (degree == 0) continue;
    const int sector = direction_sector(mv);
    const int col0 = floor_div(mv.dst_x - mv.block_w / 2, kMicroblock);
    const int row0 = floor_div(mv.dst_y - mv.block_h / 2, kMicroblock);
    const int col1 = std::min(grid.width, col0 + mv.block_w / kMicroblock);
    const int row1 = std::min(grid.height, row0 + mv.block_h / kMicroblock);
    auto& dir = grid.per_direction[sector];
    for (int r = std::max(0, row0); r < row1; ++r) {
      for (int c = std::max(0, col0); c < col1; ++c) {
        const std::size_t k = grid.index(r, c);
        grid.total[k] += degree;
        dir[k] += degree;
      }
    }
  }
  return grid;
}

MotionFeatureMap clip_scale(const DegreeGrid& grid, int fps, int sigma) {
  if (fps <= 0) throw InvalidArgument("fps must be positive");
  if (sigma <= 0) throw InvalidArgument("sigma must be positive");
  MotionFeatureMap map(grid.width, grid.height);
  map.fps_used = fps;
  map.sigma = sigma;
  for (std::size_t i = 0; i < grid.total.size(); ++i) {
    const double clipped = std::clamp(static_cast<double>(grid.total[i]) / fps, 0.0, 255.0);
    map.values[i] = clipped >= sigma
                        ? std::uint8_t{255}
                        : static_cast<std::uint8_t>(std::floor(255.0 * clipped / sigma + 0.5));
  }
  return map;
}

MotionLog parse_motion_log(const std::string& text) {
  MotionLog log;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = text::trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      // optional metadata: `# frame_w=W,frame_h=H,fps=F`
      const auto meta = text::trim(body.substr(1));
      if (meta.find('=') == std::string_view::npos) continue;
      for (auto kv : text::split_csv(meta)) {
        const auto eq = kv.find('=');
        if (eq == std::string_view::npos) continue;
        const auto key = text::trim(kv.substr(0, eq));
        const int value = static_cast<int>(text::parse_int(kv.substr(eq + 1), line_no));
        if (key == "frame_w") log.frame_w = value;
        else if (key == "frame_h") log.frame_h = value;
        else if (key == "fps") log.fps = value;
      }
      continue;
    }
    const auto f = text::split_csv(body);
    if (f.size() != 7) {
      throw ParseError("expected 'frame_idx,src_x,src_y,dst_x,dst_y,block_w,block_h'", line_no);
    }
    MotionVector mv;
    int* fields[] = {&mv.frame_idx, &mv.src_x, &mv.src_y, &mv.dst_x,
                     &mv.dst_y,     &mv.block_w, &mv.block_h};
    for (std::size_t i = 0; i < 7; ++i) *fields[i] = static_cast<int>(text::parse_int(f[i], line_no));
    if (mv.frame_idx < 0) throw ParseError("negative frame index", line_no);
    log.vectors.push_back(mv);
  }
  return log;
}

MotionLog load_motion_log(const std::filesystem::path& path) {
  return parse_motion_log(text::read_file(path));
}

std::string format_motion_log(const MotionLog& log) {
  std::ostringstream out;
  out << "# frame_w=" << log.frame_w << ",frame_h=" << log.frame_h << ",fps=" << log.fps << "\n";
  for (const auto& mv : log.vectors) {
    out << mv.frame_idx << ',' << mv.src_x << ',' << mv.src_y << ',' << mv.dst_x << ','
        << mv.dst_y << ',' << mv.block_w << ',' << mv.block_h << '\n';
  }
  return out.str();
}

std::vector<std::vector<MotionVector>> split_chunks(std::span<const MotionVector> mvs,
                                                    int frames_per_chunk, std::size_t n_chunks) {
  if (frames_per_chunk <= 0) throw InvalidArgument("frames_per_chunk must be positive");
  std::vector<std::vector<MotionVector>> out(n_chunks);
  for (const auto& mv : mvs) {
    const auto chunk = static_cast<std::size_t>(mv.frame_idx / frames_per_chunk);
    if (chunk < n_chunks) out[chunk].push_back(mv);
  }
  return out;
}

std::vector<MotionFeatureMap> feature_maps(const MotionLog& log, int frames_per_chunk,
                                           std::size_t n_chunks, int sigma) {
  if (log.frame_w <= 0 || log.frame_h <= 0 || log.fps <= 0) {
    throw InvalidArgument("motion log needs frame_w, frame_h and fps metadata");
  }
  std::vector<MotionFeatureMap> maps;
  maps.reserve(n_chunks);
  for (const auto& chunk : split_chunks(log.vectors, frames_per_chunk, n_chunks)) {
    maps.push_back(clip_scale(accumulate(chunk, log.frame_w, log.frame_h), log.fps, sigma));
  }
  return maps;
}

}  // namespace vastream
