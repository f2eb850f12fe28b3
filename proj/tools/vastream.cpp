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

// vastream: experiment harness for the streaming simulator.
//
//   vastream simulate --spec data/demo/demo.spec --policy fixed --config-id 0 --out runs/fixed
//   vastream expert   --spec data/demo/demo.spec --max-lag 1.0 --lag-step 0.1 --out runs/expert
//   vastream train    --spec data/demo/toy.spec --epochs 200 --seed 1 --out runs/toy
//   vastream report   --out runs/cmp runs/fixed runs/expert

#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "vastream/error.hpp"
#include "vastream/experiment.hpp"

namespace {

struct Flags {
  std::string spec;
  std::map<std::string, std::string> values;  // spec key -> flag value
  std::vector<std::string> sets;
  std::vector<std::string> runs;
};

void add_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--spec", f.spec, "key=value experiment spec file");
  const std::pair<const char*, const char*> flags[] = {
      {"--profile", "profile"},       {"--trace", "trace"},
      {"--policy", "policy"},         {"--checkpoint", "checkpoint"},
      {"--seed", "seed"},             {"--out", "out"},
      {"--max-lag", "max_lag"},       {"--lag-step", "lag_step"},
      {"--k", "k"},                   {"--epochs", "epochs"},
      {"--ablation", "ablation"},     {"--config-id", "config_id"},
      {"--lag-rounding", "lag_rounding"}, {"--mv-log", "mv_log"},
      {"--trajectory-log", "trajectory_log"}, {"--trace-offset", "trace_offset"},
  };
  for (const auto& [flag, key] : flags) {
    cmd->add_option_function<std::string>(
        flag, [&f, k = std::string(key)](const std::string& v) { f.values[k] = v; },
        std::string("spec key ") + key);
  }
  cmd->add_option("--set", f.sets, "extra spec entries, key=value");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vastream: trace-driven configuration-adaptive streaming lab"};
  app.require_subcommand(1);
  Flags flags;
  const std::pair<const char*, const char*> commands[] = {
      {"simulate", "run one policy (fixed|profiling|expert|agent|agent+cross) over a session"},
      {"expert", "solve the offline-optimal plan and replay it"},
      {"train", "train an agent from expert demonstrations"},
      {"eval", "evaluate a trained checkpoint"},
      {"features", "turn a motion-vector log into per-chunk PGM feature maps"},
      {"correlate", "camera correlations and share rules from a trajectory log"},
      {"report", "merge run summaries into a comparison table"},
      {"demo", "write the bundled demo assets"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_flags(cmd, flags);
    if (std::string(name) == "report") cmd->add_option("runs", flags.runs, "run directories");
  }
  CLI11_PARSE(app, argc, argv);
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    vastream::ExperimentSpec spec;
    if (!flags.spec.empty()) spec = vastream::ExperimentSpec::load(flags.spec);
    const std::filesystem::path cwd = std::filesystem::current_path();
    for (const auto& [key, value] : flags.values) spec.set(key, value, cwd);
    for (const auto& kv : flags.sets) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw vastream::InvalidArgument("--set expects key=value");
      spec.set(kv.substr(0, eq), kv.substr(eq + 1), cwd);
    }
    if (!flags.runs.empty()) {
      std::string joined;
      for (const auto& r : flags.runs) joined += (joined.empty() ? "" : ",") + r;
      spec.set("runs", joined, cwd);
    }
    return vastream::run_command(command, spec, std::cout);
  } catch (const vastream::Error& e) {
    std::cerr << "vastream " << command << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "vastream " << command << ": " << e.what() << "\n";
    return 1;
  }
}
