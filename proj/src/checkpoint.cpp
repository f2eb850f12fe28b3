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

#include "vastream/checkpoint.hpp"

#include <cmath>

#include "json.hpp"
#include "vastream/error.hpp"
#include "vastream/text.hpp"

namespace vastream {

namespace {

using nlohmann::ordered_json;

constexpr const char* kFormat = "vastream-checkpoint";

ordered_json matrix_json(const nn::Matrix& m) {
  ordered_json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  ordered_json data = ordered_json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) data.push_back(m(r, c));
  }
  j["data"] = std::move(data);
  return j;
}

void read_matrix(const ordered_json& j, nn::Matrix& into, const std::string& what) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  if (rows != into.rows() || cols != into.cols()) {
    throw ParseError("checkpoint array " + what + " has shape " + std::to_string(rows) + "x" +
                         std::to_string(cols) + ", architecture expects " +
                         std::to_string(into.rows()) + "x" + std::to_string(into.cols()),
                     0);
  }
  const auto& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
    throw ParseError("checkpoint array " + what + " has the wrong element count", 0);
  }
  std::size_t k = 0;
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const double v = data[k++].get<double>();
      if (!std::isfinite(v)) throw ParseError("checkpoint array " + what + " is not finite", 0);
      into(r, c) = v;
    }
  }
}

template <typename Net>
ordered_json net_json(const Net& net) {
  ordered_json arr = ordered_json::array();
  for (const nn::Matrix* m : net.params()) arr.push_back(matrix_json(*m));
  return arr;
}

template <typename Net>
void read_net(const ordered_json& j, Net& net, const std::string& name) {
  auto params = net.params();
  if (!j.is_array() || j.size() != params.size()) {
    throw ParseError("checkpoint network " + name + " has the wrong number of arrays", 0);
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    read_matrix(j[i], *params[i], name + "[" + std::to_string(i) + "]");
  }
}

}  // namespace

std::string format_checkpoint(const Checkpoint& ckpt) {
  const Agent& a = ckpt.agent;
  ordered_json j;
  j["format"] = kFormat;
  j["version"] = kCheckpointVersion;
  j["architecture"] = {{"input_dim", a.arch.input_dim},
                       {"hidden", a.arch.hidden},
                       {"num_actions", a.arch.num_actions},
                       {"disc_hidden", a.arch.disc_hidden},
                       {"shortcut_index", a.arch.shortcut_index}};
  j["encoder"] = {{"history", a.encoder.history},
                  {"max_lag", a.encoder.max_lag},
                  {"delay_scale", a.encoder.delay_scale},
                  {"pool", a.encoder.pool}};
  j["seed"] = a.seed;
  j["epoch"] = a.epoch;
  j["train_config_digest"] = ckpt.train_config_digest;
  j["policy"] = net_json(a.policy);
  j["value"] = net_json(a.value);
  j["discriminator"] = net_json(a.disc);
  return j.dump(1) + "\n";
}

Checkpoint parse_checkpoint(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw ParseError(std::string("checkpoint is not valid JSON: ") + e.what(), 0);
  }
  try {
    if (j.at("format") != kFormat) throw ParseError("not a vastream checkpoint", 0);
    if (j.at("version").get<int>() != kCheckpointVersion) {
      throw ParseError("unsupported checkpoint version " + j.at("version").dump(), 0);
    }
    Checkpoint ckpt;
    Agent& a = ckpt.agent;
    const auto& arch = j.at("architecture");
    a.arch.input_dim = arch.at("input_dim").get<int>();
    a.arch.hidden = arch.at("hidden").get<int>();
    a.arch.num_actions = arch.at("num_actions").get<int>();
    a.arch.disc_hidden = arch.at("disc_hidden").get<int>();
    a.arch.shortcut_index = arch.at("shortcut_index").get<int>();
    const auto& enc = j.at("encoder");
    a.encoder.history = enc.at("history").get<std::size_t>();
    a.encoder.max_lag = enc.at("max_lag").get<double>();
    a.encoder.delay_scale = enc.at("delay_scale").get<double>();
    a.encoder.pool = enc.at("pool").get<int>();
    if (static_cast<int>(a.encoder.width()) != a.arch.input_dim) {
      throw ParseError("checkpoint encoder width does not match the architecture", 0);
    }
    a.seed = j.at("seed").get<std::uint64_t>();
    a.epoch = j.at("epoch").get<int>();
    ckpt.train_config_digest = j.at("train_config_digest").get<std::string>();

    // Shapes come from the architecture; values are overwritten below.
    std::mt19937_64 rng(0);
    a.policy = nn::PolicyNet(a.arch, rng);
    a.value = nn::ValueNet(a.arch, rng);
    a.disc = nn::Discriminator(a.arch, rng);
    read_net(j.at("policy"), a.policy, "policy");
    read_net(j.at("value"), a.value, "value");
    read_net(j.at("discriminator"), a.disc, "discriminator");
    return ckpt;
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("malformed checkpoint: ") + e.what(), 0);
  }
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  text::write_file(path, format_checkpoint(ckpt));
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  return parse_checkpoint(text::read_file(path));
}

std::string parameter_digest(const Agent& agent) {
  ordered_json j = {net_json(agent.policy), net_json(agent.value), net_json(agent.disc)};
  return text::hex64(text::fnv1a64(j.dump()));
}

}  // namespace vastream
