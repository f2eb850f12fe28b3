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

#ifndef VASTREAM_TEXT_HPP_
#define VASTREAM_TEXT_HPP_

// Small locale-independent text helpers shared by the file readers and
// writers. Numbers always use '.' as the decimal separator.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vastream::text {

// Splits on ',' and trims surrounding blanks from each field.
std::vector<std::string_view> split_csv(std::string_view line);

std::string_view trim(std::string_view s);

// Strict numeric parsers; throw ParseError tagged with `line_no`.
double parse_double(std::string_view field, std::size_t line_no);
std::int64_t parse_int(std::string_view field, std::size_t line_no);

// Shortest representation that parses back to the same double.
std::string format_double(double v);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

// 64-bit FNV-1a hash and its 16-digit hex form.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

// True for blank lines and '#' comments.
bool is_skippable(std::string_view line);

}  // namespace vastream::text

#endif  // VASTREAM_TEXT_HPP_
