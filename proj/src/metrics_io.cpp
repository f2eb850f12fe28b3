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

#include <algorithm>

#include "json.hpp"
#include "vastream/simulator.hpp"
#include "vastream/text.hpp"

namespace vastream {

std::string metrics_summary_json(const SessionMetrics& metrics, const std::string& policy_name) {
  nlohmann::ordered_json j;
  j["policy"] = policy_name;
  j["n_chunks"] = metrics.outcomes.size();
  j["mean_accuracy"] = metrics.mean_accuracy;
  j["mean_lag"] = metrics.mean_lag;
  double max_lag = 0.0;
  std::int64_t bytes = 0;
  for (const auto& o : metrics.outcomes) {
    max_lag = std::max(max_lag, o.lag);
    bytes += o.size;
  }
  j["max_lag"] = max_lag;
  j["total_bytes"] = bytes;
  return j.dump(2) + "\n";
}

std::string format_chunks_csv(const SessionMetrics& metrics) {
  std::string out = "chunk,config_id,size,u,lag,accuracy\n";
  for (const auto& o : metrics.outcomes) {
    out += std::to_string(o.chunk_idx) + ',' + std::to_string(o.config_id) + ',' +
           std::to_string(o.size) + ',' + text::format_double(o.upload_delay) + ',' +
           text::format_double(o.lag) + ',' + text::format_double(o.accuracy) + '\n';
  }
  return out;
}

std::string format_cdf_csv(const std::vector<CdfPoint>& cdf) {
  std::string out = "value,cum_fraction\n";
  for (const auto& p : cdf) {
    out += text::format_double(p.value) + ',' + text::format_double(p.cum_fraction) + '\n';
  }
  return out;
}

}  // namespace vastream
