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

#ifndef VASTREAM_PROFILE_IO_HPP_
#define VASTREAM_PROFILE_IO_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "vastream/content_model.hpp"

namespace vastream {

// Profile file: header `chunks=N,configs=M` followed by one
// `chunk_idx,config_id,accuracy,size_bytes` line per cell, in any order.
// Every cell must appear exactly once.
VideoProfile parse_profile(const std::string& text, std::vector<double> complexity = {});
VideoProfile load_profile(const std::filesystem::path& path,
                          const std::filesystem::path& complexity_path = {});
std::string format_profile(const VideoProfile& profile);
void save_profile(const VideoProfile& profile, const std::filesystem::path& path);

// Complexity file: one real in [0, 1] per line, '#' comments allowed.
std::vector<double> parse_complexity(const std::string& text);
std::vector<double> load_complexity(const std::filesystem::path& path);
void save_complexity(std::span<const double> values, const std::filesystem::path& path);

}  // namespace vastream

#endif  // VASTREAM_PROFILE_IO_HPP_
