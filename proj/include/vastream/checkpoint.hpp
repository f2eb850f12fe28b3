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

#ifndef VASTREAM_CHECKPOINT_HPP_
#define VASTREAM_CHECKPOINT_HPP_

#include <filesystem>
#include <string>

#include "vastream/gail.hpp"

namespace vastream {

inline constexpr int kCheckpointVersion = 1;

struct Checkpoint {
  Agent agent;
  std::string train_config_digest;
};

// JSON with a format tag, version, architecture, encoder options, seed,
// epoch, config digest and every parameter array ({rows, cols, data}
// column-major). Doubles are written shortest-round-trip, so save/load is
// lossless and byte-stable.
std::string format_checkpoint(const Checkpoint& ckpt);
Checkpoint parse_checkpoint(const std::string& text);
void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

// Digest of the parameter arrays only.
std::string parameter_digest(const Agent& agent);

}  // namespace vastream

#endif  // VASTREAM_CHECKPOINT_HPP_
