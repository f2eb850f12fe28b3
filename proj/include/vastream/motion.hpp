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

#ifndef VASTREAM_MOTION_HPP_
#define VASTREAM_MOTION_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace vastream {

// Codec side data: the block centred at dst in the encoded frame matches the
// block centred at src in the reference frame.
struct MotionVector {
  int frame_idx = 0;
  int src_x = 0;
  int src_y = 0;
  int dst_x = 0;
  int dst_y = 0;
  int block_w = 4;
  int block_h = 4;

  friend bool operator==(const MotionVector&, const MotionVector&) = default;
};

inline constexpr int kMicroblock = 4;
inline constexpr int kSectors = 8;
inline constexpr int kNoDirection = -1;

// Manhattan length of the displacement.
int motion_degree(const MotionVector& mv) noexcept;

// 45-degree sector of the displacement (dst - src): sector 0 is centred on
// +x and indices grow counter-clockwise in the (x, y) pixel plane, i.e.
// angle = atan2(dy, dx). Zero displacement has no direction.
int direction_sector(int dx, int dy) noexcept;
int direction_sector(const MotionVector& mv) noexcept;

// Accumulated motion degrees on the 4x4 microblock grid. Cells are stored
// row-major; (row, col) = (pixel_y / 4, pixel_x / 4).
struct DegreeGrid {
  int width = 0;   // columns
  int height = 0;  // rows
  std::vector<std::uint32_t> total;
  std::array<std::vector<std::uint32_t>, kSectors> per_direction;

  DegreeGrid() = default;
  DegreeGrid(int width, int height);

  std::size_t index(int row, int col) const noexcept {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
           static_cast<std::size_t>(col);
  }
  // Sector with the largest accumulated degree (lowest index on ties), or
  // kNoDirection for a cell without motion.
  int dominant_direction(std::size_t cell) const noexcept;
  std::vector<std::int8_t> dominant_directions() const;

  DegreeGrid& operator+=(const DegreeGrid& other);
  friend bool operator==(const DegreeGrid&, const DegreeGrid&) = default;
};

// Grayscale map with values in [0, 255].
struct MotionFeatureMap {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> values;
  int fps_used = 0;
  int sigma = 20;

  MotionFeatureMap() = default;
  MotionFeatureMap(int width, int height, std::uint8_t fill = 0);

  bool empty() const noexcept { return values.empty(); }
  std::uint8_t at(int row, int col) const {
    return values[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(col)];
  }
  std::uint8_t& at(int row, int col) {
    return values[static_cast<std::size_t>(row) * static_cast<std::size_t>(width) +
                  static_cast<std::size_t>(col)];
  }
  friend bool operator==(const MotionFeatureMap&, const MotionFeatureMap&) = default;
};

// Grid size for a frame: ceil(frame / 4) per axis.
int microblocks(int pixels) noexcept;

// Sums the degree of every vector into each 4x4 microblock its macroblock
// covers. Throws InvalidArgument for a vector outside the frame or block
// sides that are not multiples of 4 in [4, 16].
DegreeGrid accumulate(std::span<const MotionVector> mvs, int frame_w, int frame_h);

// Divides by the frame rate, clips to [0, 255] and rescales so that
// clipped degrees >= sigma saturate at 255. Rounds half-up.
MotionFeatureMap clip_scale(const DegreeGrid& grid, int fps, int sigma = 20);

// A parsed motion-vector log. Frame size and capture rate come from an
// optional `# frame_w=W,frame_h=H,fps=F` comment; zero when absent.
struct MotionLog {
  int frame_w = 0;
  int frame_h = 0;
  int fps = 0;
  std::vector<MotionVector> vectors;
};

// Lines: `frame_idx,src_x,src_y,dst_x,dst_y,block_w,block_h`.
MotionLog parse_motion_log(const std::string& text);
MotionLog load_motion_log(const std::filesystem::path& path);
std::string format_motion_log(const MotionLog& log);

// Groups vectors into chunks of `frames_per_chunk` consecutive frame
// indices; returns `n_chunks` groups (missing chunks are empty).
std::vector<std::vector<MotionVector>> split_chunks(std::span<const MotionVector> mvs,
                                                    int frames_per_chunk, std::size_t n_chunks);

// One map per chunk using the log's frame size and capture rate.
std::vector<MotionFeatureMap> feature_maps(const MotionLog& log, int frames_per_chunk,
                                           std::size_t n_chunks, int sigma = 20);

}  // namespace vastream

#endif  // VASTREAM_MOTION_HPP_
