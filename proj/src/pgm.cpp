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

#include "vastream/pgm.hpp"

#include <cctype>
#include <cstring>

#include "vastream/error.hpp"
#include "vastream/text.hpp"

namespace vastream {

std::string write_pgm(const MotionFeatureMap& map) {
  if (map.values.size() != static_cast<std::size_t>(map.width) * static_cast<std::size_t>(map.height)) {
    throw InvalidArgument("map payload does not match its dimensions");
  }
  std::string out = "P5\n" + std::to_string(map.width) + " " + std::to_string(map.height) + "\n255\n";
  out.append(reinterpret_cast<const char*>(map.values.data()), map.values.size());
  return out;
}

namespace {

class HeaderReader {
 public:
  explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

  void skip_blanks_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = static_cast<unsigned char>(bytes_[pos_]);
      if (std::isspace(c)) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  int read_uint() {
    skip_blanks_and_comments();
    long v = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      v = v * 10 + (bytes_[pos_++] - '0');
      if (v > 1'000'000) throw ParseError("PGM header value too large");
      ++digits;
    }
    if (digits == 0) throw ParseError("malformed PGM header");
    return static_cast<int>(v);
  }

  std::size_t pos() const { return pos_; }
  void advance() { ++pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

MotionFeatureMap read_pgm(std::string_view bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw ParseError("not a binary PGM (missing P5 magic)");
  }
  HeaderReader header(bytes.substr(2));
  const int width = header.read_uint();
  const int height = header.read_uint();
  const int maxval = header.read_uint();
  if (maxval != 255) throw ParseError("PGM maxval must be 255");
  // exactly one whitespace byte separates the header from the raster
  const std::size_t raster = 2 + header.pos();
  if (raster >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[raster]))) {
    throw ParseError("malformed PGM header");
  }
  const std::size_t expected = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  const std::size_t payload = bytes.size() - (raster + 1);
  if (payload != expected) {
    throw ParseError("PGM payload has " + std::to_string(payload) + " bytes, expected " +
                     std::to_string(expected));
  }
  MotionFeatureMap map(width, height);
  if (expected > 0) std::memcpy(map.values.data(), bytes.data() + raster + 1, expected);
  return map;
}

void save_pgm(const MotionFeatureMap& map, const std::filesystem::path& path) {
  text::write_file(path, write_pgm(map));
}

MotionFeatureMap load_pgm(const std::filesystem::path& path) {
  return read_pgm(text::read_file(path));
}

}  // namespace vastream
