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

#include "vastream/profile_io.hpp"

#include <sstream>

#include "vastream/error.hpp"
#include "vastream/text.hpp"

namespace vastream {

namespace {

std::size_t parse_header_count(std::string_view field, std::string_view key, std::size_t line_no) {
  const std::string prefix = std::string(key) + "=";
  if (field.substr(0, prefix.size()) != prefix) {
    throw ParseError("profile header must be 'chunks=N,configs=M'", line_no);
  }
  const auto v = text::parse_int(field.substr(prefix.size()), line_no);
  if (v <= 0) throw ParseError(std::string(key) + " must be positive", line_no);
  return static_cast<std::size_t>(v);
}

}  // namespace

VideoProfile parse_profile(const std::string& text, std::vector<double> complexity) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::size_t n_chunks = 0;
  std::size_t n_configs = 0;
  std::vector<double> acc;
  std::vector<std::int64_t> size;
  std::vector<char> seen;
  std::size_t filled = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (text::is_skippable(line)) continue;
    const auto fields = text::split_csv(line);
    if (n_chunks == 0) {
      if (fields.size() != 2) throw ParseError("profile header must be 'chunks=N,configs=M'", line_no);
      n_chunks = parse_header_count(fields[0], "chunks", line_no);
      n_configs = parse_header_count(fields[1], "configs", line_no);
      acc.assign(n_chunks * n_configs, 0.0);
      size.assign(n_chunks * n_configs, 0);
      seen.assign(n_chunks * n_configs, 0);
      continue;
    }
    if (fields.size() != 4) {
      throw ParseError("expected 'chunk_idx,config_id,accuracy,size_bytes'", line_no);
    }
    const auto chunk = text::parse_int(fields[0], line_no);
    const auto config = text::parse_int(fields[1], line_no);
    const double a = text::parse_double(fields[2], line_no);
    const auto s = text::parse_int(fields[3], line_no);
    if (chunk < 0 || static_cast<std::size_t>(chunk) >= n_chunks || config < 0 ||
        static_cast<std::size_t>(config) >= n_configs) {
      throw ParseError("cell index out of range", line_no);
    }
    const std::string cell =
        "[chunk " + std::to_string(chunk) + ", config " + std::to_string(config) + "]";
    if (!(a >= 0.0 && a <= 1.0)) throw ParseError("accuracy outside [0, 1] at " + cell, line_no);
    if (s <= 0) throw ParseError("non-positive size at " + cell, line_no);
    const std::size_t k = static_cast<std::size_t>(chunk) * n_configs + static_cast<std::size_t>(config);
    if (seen[k]) throw ParseError("duplicate cell " + cell, line_no);
    seen[k] = 1;
    ++filled;
    acc[k] = a;
    size[k] = s;
  }
  if (n_chunks == 0) throw ParseError("profile file is empty");
  if (filled != n_chunks * n_configs) {
    throw ParseError("profile is missing " + std::to_string(n_chunks * n_configs - filled) +
                     " cells");
  }
  return VideoProfile(n_chunks, n_configs, std::move(complexity), std::move(acc), std::move(size));
}

VideoProfile load_profile(const std::filesystem::path& path,
                          const std::filesystem::path& complexity_path) {
  std::vector<double> complexity;
  if (!complexity_path.empty()) complexity = load_complexity(complexity_path);
  return parse_profile(text::read_file(path), std::move(complexity));
}

std::string format_profile(const VideoProfile& profile) {
  std::string out = "chunks=" + std::to_string(profile.n_chunks()) +
                    ",configs=" + std::to_string(profile.n_configs()) + "\n";
  for (std::size_t i = 0; i < profile.n_chunks(); ++i) {
    for (std::size_t c = 0; c < profile.n_configs(); ++c) {
      out += std::to_string(i);
      out += ',';
      out += std::to_string(c);
      out += ',';
      out += text::format_double(profile.accuracy(i, c));
      out += ',';
      out += std::to_string(profile.size_bytes(i, c));
      out += '\n';
    }
  }
  return out;
}

void save_profile(const VideoProfile& profile, const std::filesystem::path& path) {
  text::write_file(path, format_profile(profile));
}

std::vector<double> parse_complexity(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::is_skippable(line)) continue;
    const double m = text::parse_double(line, line_no);
    if (!(m >= 0.0 && m <= 1.0)) throw ParseError("complexity outside [0, 1]", line_no);
    out.push_back(m);
  }
  if (out.empty()) throw ParseError("complexity file is empty");
  return out;
}

std::vector<double> load_complexity(const std::filesystem::path& path) {
  return parse_complexity(text::read_file(path));
}

void save_complexity(std::span<const double> values, const std::filesystem::path& path) {
  std::string out;
  for (double m : values) {
    out += text::format_double(m);
    out += '\n';
  }
  text::write_file(path, out);
}

}  // namespace vastream
