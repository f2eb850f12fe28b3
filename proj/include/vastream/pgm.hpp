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

#ifndef VASTREAM_PGM_HPP_
#define VASTREAM_PGM_HPP_

#include <filesystem>
#include <string>
#include <string_view>

#include "vastream/motion.hpp"

namespace vastream {

// Binary PGM (P5, maxval 255). The header carries only the dimensions, so
// a decoded map has fps_used = 0 and the default sigma.
std::string write_pgm(const MotionFeatureMap& map);
MotionFeatureMap read_pgm(std::string_view bytes);

void save_pgm(const MotionFeatureMap& map, const std::filesystem::path& path);
MotionFeatureMap load_pgm(const std::filesystem::path& path);

}  // namespace vastream

#endif  // VASTREAM_PGM_HPP_
