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

#ifndef VASTREAM_EXPERIMENT_HPP_
#define VASTREAM_EXPERIMENT_HPP_

#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "vastream/baselines.hpp"
#include "vastream/expert.hpp"
#include "vastream/gail.hpp"
#include "vastream/scenario.hpp"

namespace vastream {

// Line-oriented `key=value` experiment description. '#' starts a comment
// line. Unknown keys are rejected; path-valued keys are resolved against the
// directory of the spec file (or the working directory for overrides).
class ExperimentSpec {
 public:
  static ExperimentSpec parse(const std::string& text, const std::filesystem::path& base_dir = {});
  static ExperimentSpec load(const std::filesystem::path& path);

  void set(const std::string& key, const std::string& value,
           const std::filesystem::path& base_dir = {});
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback = "") const;
  std::string require(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;
  const std::map<std::string, std::string>& values() const noexcept { return values_; }

  static const std::vector<std::string>& known_keys();

 private:
  std::map<std::string, std::string> values_;
};

ConfigSpace spec_config_space(const ExperimentSpec& spec);
EnvOptions spec_env_options(const ExperimentSpec& spec);
LagGrid spec_lag_grid(const ExperimentSpec& spec);
EncoderOptions spec_encoder(const ExperimentSpec& spec);
TrainConfig spec_train_config(const ExperimentSpec& spec);
ProfilingSchedule spec_profiling(const ExperimentSpec& spec);

// Profile, trace, space and map stream described by the spec. With
// `cross`, the target camera's maps are merged with the source camera's.
Scenario load_scenario(const ExperimentSpec& spec, bool cross = false);

// Expert plan for one session, using lag-aware delays unless the spec
// selects `expert_delays=nominal`.
ExpertPlan solve_expert(const Env& env, const ExperimentSpec& spec);

// Expert demonstrations for each of `demo_offsets`.
std::vector<Demonstration> collect_demonstrations(const Scenario& scenario,
                                                  const ExperimentSpec& spec);

TrainResult train_agent(const Scenario& scenario, std::span<const Demonstration> demos,
                        const ExperimentSpec& spec);

// Subcommands: simulate, expert, train, eval, features, correlate, report,
// demo. Everything is written below the spec's `out` directory together with
// manifest.json. Returns the process exit code; errors propagate as
// exceptions.
int run_command(const std::string& command, const ExperimentSpec& spec, std::ostream& log);

}  // namespace vastream

#endif  // VASTREAM_EXPERIMENT_HPP_
