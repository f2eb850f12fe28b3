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

#include "vastream/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"
#include "vastream/checkpoint.hpp"
#include "vastream/cross_camera.hpp"
#include "vastream/error.hpp"
#include "vastream/pgm.hpp"
#include "vastream/profile_io.hpp"
#include "vastream/text.hpp"

namespace vastream {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

const std::vector<std::string> kPathKeys = {"profile", "complexity",     "trace",      "mv_log",
                                            "source_mv_log", "trajectory_log", "checkpoint", "out"};

bool is_path_key(const std::string& key) {
  return std::find(kPathKeys.begin(), kPathKeys.end(), key) != kPathKeys.end();
}

std::string resolve(const std::string& value, const fs::path& base) {
  const fs::path p(value);
  if (p.is_absolute() || base.empty()) return p.lexically_normal().string();
  return (base / p).lexically_normal().string();
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  if (text::trim(value).empty()) return out;
  for (auto f : text::split_csv(value)) out.emplace_back(f);
  return out;
}

}  // namespace

const std::vector<std::string>& ExperimentSpec::known_keys() {
  static const std::vector<std::string> keys = {
      // scenario
      "scenario", "profile", "complexity", "trace", "scale_trace", "mv_log", "source_mv_log",
      "trajectory_log", "resolutions", "fps", "qps", "chunk_seconds", "rtt", "k", "sigma",
      "frames_per_chunk", "mv_fps", "frame_w", "frame_h", "chunks", "trace_offset",
      // policies
      "policy", "config_id", "checkpoint", "window", "profile_segment", "top_k",
      // expert
      "max_lag", "lag_step", "lag_rounding", "expert_delays",
      // training
      "seed", "epochs", "rollouts", "minibatch", "ppo_epochs", "disc_epochs", "lr", "disc_lr",
      "gamma", "clip", "entropy", "hidden", "disc_hidden", "eval_every", "ablation", "alpha",
      "demo_offsets", "val_offsets",
      // cross-camera
      "source_camera", "target_camera", "s_thresh", "t_thresh", "grid_rows", "grid_cols",
      // output
      "out", "runs"};
  return keys;
}

void ExperimentSpec::set(const std::string& key, const std::string& value, const fs::path& base_dir) {
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    throw InvalidArgument("unknown spec key '" + key + "'");
  }
  if (is_path_key(key)) {
    values_[key] = resolve(value, base_dir);
  } else if (key == "runs") {
    std::string joined;
    for (const auto& r : split_list(value)) {
      if (!joined.empty()) joined += ',';
      joined += resolve(r, base_dir);
    }
    values_[key] = joined;
  } else {
    values_[key] = value;
  }
}

ExperimentSpec ExperimentSpec::parse(const std::string& text, const fs::path& base_dir) {
  ExperimentSpec spec;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::is_skippable(line)) continue;
    const auto body = text::trim(line);
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", line_no);
    const std::string key(text::trim(body.substr(0, eq)));
    const std::string value(text::trim(body.substr(eq + 1)));
    try {
      spec.set(key, value, base_dir);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return spec;
}

ExperimentSpec ExperimentSpec::load(const fs::path& path) {
  return parse(text::read_file(path), path.parent_path());
}

std::string ExperimentSpec::get(const std::string& key, const std::string& fallback) const {
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

std::string ExperimentSpec::require(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) {
    throw InvalidArgument("spec is missing '" + key + "'");
  }
  return it->second;
}

double ExperimentSpec::get_double(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  try {
    return text::parse_double(get(key), 0);
  } catch (const ParseError&) {
    throw InvalidArgument("spec key '" + key + "' is not a number: " + get(key));
  }
}

long long ExperimentSpec::get_int(const std::string& key, long long fallback) const {
  if (!has(key)) return fallback;
  try {
    return text::parse_int(get(key), 0);
  } catch (const ParseError&) {
    throw InvalidArgument("spec key '" + key + "' is not an integer: " + get(key));
  }
}

std::vector<double> ExperimentSpec::get_doubles(const std::string& key) const {
  std::vector<double> out;
  for (const auto& f : split_list(get(key))) {
    try {
      out.push_back(text::parse_double(f, 0));
    } catch (const ParseError&) {
      throw InvalidArgument("spec key '" + key + "' has a non-numeric entry: " + f);
    }
  }
  return out;
}

ConfigSpace spec_config_space(const ExperimentSpec& spec) {
  if (!spec.has("resolutions") && !spec.has("fps") && !spec.has("qps")) {
    return default_config_space();
  }
  std::vector<double> res = spec.has("resolutions") ? spec.get_doubles("resolutions")
                                                    : std::vector<double>(std::begin(kResolutionDomain),
                                                                          std::end(kResolutionDomain));
  const auto ints = [&](const std::string& key, std::span<const int> domain) {
    if (!spec.has(key)) return std::vector<int>(domain.begin(), domain.end());
    std::vector<int> out;
    for (double v : spec.get_doubles(key)) {
      if (v != std::floor(v)) throw InvalidArgument("spec key '" + key + "' needs integers");
      out.push_back(static_cast<int>(v));
    }
    return out;
  };
  return build_config_space(res, ints("fps", kFpsDomain), ints("qps", kQpDomain));
}

EnvOptions spec_env_options(const ExperimentSpec& spec) {
  EnvOptions o;
  o.chunk_seconds = spec.get_double("chunk_seconds", o.chunk_seconds);
  o.rtt = spec.get_double("rtt", o.rtt);
  const long long k = spec.get_int("k", static_cast<long long>(o.history));
  if (k < 1) throw InvalidArgument("k must be at least 1");
  o.history = static_cast<std::size_t>(k);
  return o;
}

LagGrid spec_lag_grid(const ExperimentSpec& spec) {
  LagGrid g;
  g.max_lag = spec.get_double("max_lag", g.max_lag);
  g.step = spec.get_double("lag_step", g.step);
  const std::string r = spec.get("lag_rounding", "ceil");
  if (r == "ceil") g.rounding = LagRounding::kCeil;
  else if (r == "half-up") g.rounding = LagRounding::kHalfUp;
  else throw InvalidArgument("lag_rounding must be 'ceil' or 'half-up'");
  g.validate();
  return g;
}

EncoderOptions spec_encoder(const ExperimentSpec& spec) {
  EncoderOptions e;
  e.history = spec_env_options(spec).history;
  e.max_lag = spec_lag_grid(spec).max_lag;
  return e;
}

TrainConfig spec_train_config(const ExperimentSpec& spec) {
  TrainConfig c;
  const auto as_int = [&](const std::string& key, int fallback) {
    return static_cast<int>(spec.get_int(key, fallback));
  };
  c.seed = static_cast<std::uint64_t>(spec.get_int("seed", static_cast<long long>(c.seed)));
  c.epochs = as_int("epochs", c.epochs);
  c.rollouts_per_epoch = as_int("rollouts", c.rollouts_per_epoch);
  c.minibatch = as_int("minibatch", c.minibatch);
  c.ppo_epochs = as_int("ppo_epochs", c.ppo_epochs);
  c.disc_epochs = as_int("disc_epochs", c.disc_epochs);
  c.hidden = as_int("hidden", c.hidden);
  c.disc_hidden = as_int("disc_hidden", c.disc_hidden);
  c.eval_every = as_int("eval_every", c.eval_every);
  c.lr = spec.get_double("lr", c.lr);
  c.disc_lr = spec.get_double("disc_lr", c.disc_lr);
  c.gamma = spec.get_double("gamma", c.gamma);
  c.clip = spec.get_double("clip", c.clip);
  c.entropy_coef = spec.get_double("entropy", c.entropy_coef);
  c.ablation_alpha = spec.get_double("alpha", c.ablation_alpha);
  const std::string ablation = spec.get("ablation", "none");
  if (ablation == "none") c.reward = RewardMode::kGail;
  else if (ablation == "fixed-reward") c.reward = RewardMode::kFixedReward;
  else throw InvalidArgument("ablation must be 'none' or 'fixed-reward'");
  c.validate();
  return c;
}

ProfilingSchedule spec_profiling(const ExperimentSpec& spec) {
  ProfilingSchedule s;
  s.window = static_cast<int>(spec.get_int("window", s.window));
  s.profile_segment = static_cast<int>(spec.get_int("profile_segment", s.profile_segment));
  s.top_k = static_cast<int>(spec.get_int("top_k", s.top_k));
  s.validate();
  return s;
}

namespace {

MotionLog load_log_with_overrides(const fs::path& path, const ExperimentSpec& spec) {
  MotionLog log = load_motion_log(path);
  log.fps = static_cast<int>(spec.get_int("mv_fps", log.fps));
  log.frame_w = static_cast<int>(spec.get_int("frame_w", log.frame_w));
  log.frame_h = static_cast<int>(spec.get_int("frame_h", log.frame_h));
  if (log.fps <= 0 || log.frame_w <= 0 || log.frame_h <= 0) {
    throw InvalidArgument("motion log " + path.string() +
                          " lacks frame size / fps metadata (set frame_w, frame_h, mv_fps)");
  }
  return log;
}

int frames_per_chunk(const ExperimentSpec& spec, const MotionLog& log, double chunk_seconds) {
  const long long fpc =
      spec.get_int("frames_per_chunk", std::llround(log.fps * chunk_seconds));
  if (fpc < 1) throw InvalidArgument("frames_per_chunk must be at least 1");
  return static_cast<int>(fpc);
}

SelectOptions select_options(const ExperimentSpec& spec, int rows, int cols) {
  SelectOptions o;
  o.spatial_threshold = spec.get_double("s_thresh", o.spatial_threshold);
  o.temporal_threshold = spec.get_double("t_thresh", o.temporal_threshold);
  o.grid_rows = static_cast<int>(spec.get_int("grid_rows", rows));
  o.grid_cols = static_cast<int>(spec.get_int("grid_cols", cols));
  return o;
}

}  // namespace

Scenario load_scenario(const ExperimentSpec& spec, bool cross) {
  Scenario s;
  auto space = std::make_shared<const ConfigSpace>(spec_config_space(spec));
  auto profile = std::make_shared<const VideoProfile>(
      load_profile(spec.require("profile"), spec.has("complexity") ? fs::path(spec.get("complexity")) : fs::path()));
  if (profile->n_configs() != space->size()) {
    throw InvalidArgument("profile has " + std::to_string(profile->n_configs()) +
                          " configurations but the spec's space has " +
                          std::to_string(space->size()));
  }
  NetworkTrace trace = load_trace(spec.require("trace"));
  if (spec.has("scale_trace")) {
    const auto range = spec.get_doubles("scale_trace");
    if (range.size() != 2) throw InvalidArgument("scale_trace needs 'lo,hi' in Mbps");
    trace = scale_trace(trace, range[0] * kBytesPerMbit, range[1] * kBytesPerMbit);
  }
  s.env = spec_env_options(spec);
  const int sigma = static_cast<int>(spec.get_int("sigma", 20));
  if (spec.has("mv_log")) {
    const MotionLog log = load_log_with_overrides(spec.get("mv_log"), spec);
    const int fpc = frames_per_chunk(spec, log, s.env.chunk_seconds);
    auto maps = feature_maps(log, fpc, profile->n_chunks(), sigma);
    if (cross) {
      const MotionLog src = load_log_with_overrides(spec.require("source_mv_log"), spec);
      const TrajectoryLog traj = load_trajectory_log(spec.require("trajectory_log"));
      const std::string source = spec.require("source_camera");
      const std::string target = spec.require("target_camera");
      const auto rules = select_sources(
          traj, target, select_options(spec, microblocks(src.frame_h), microblocks(src.frame_w)));
      const auto it = std::find_if(rules.begin(), rules.end(),
                                   [&](const ShareRule& r) { return r.source == source; });
      if (it == rules.end()) {
        throw InvalidArgument("no share rule from camera " + source + " to camera " + target);
      }
      maps = shared_map_stream(maps, src, *it, frames_per_chunk(spec, src, s.env.chunk_seconds),
                               s.env.chunk_seconds, sigma);
    }
    s.maps = std::make_shared<const Env::MapStream>(std::move(maps));
  } else if (cross) {
    throw InvalidArgument("cross-camera runs need mv_log");
  }
  s.space = std::move(space);
  s.profile = std::move(profile);
  s.trace = std::make_shared<const NetworkTrace>(std::move(trace));
  return s;
}

ExpertPlan solve_expert(const Env& env, const ExperimentSpec& spec) {
  const LagGrid grid = spec_lag_grid(spec);
  const EnvOptions& o = env.options();
  const std::string mode = spec.get("expert_delays", "lag-aware");
  if (mode == "nominal") {
    return expert_plan(env.profile(), nominal_delays(env.profile(), env.trace(), o.chunk_seconds, o.rtt),
                       grid, o.chunk_seconds);
  }
  if (mode != "lag-aware") throw InvalidArgument("expert_delays must be 'lag-aware' or 'nominal'");
  return expert_plan(env.profile(),
                     lag_aware_delays(env.profile(), env.trace(), grid, o.chunk_seconds, o.rtt), grid,
                     o.chunk_seconds);
}

std::vector<Demonstration> collect_demonstrations(const Scenario& scenario,
                                                  const ExperimentSpec& spec) {
  auto offsets = spec.get_doubles("demo_offsets");
  if (offsets.empty()) offsets.push_back(0.0);
  std::vector<Demonstration> demos;
  for (double off : offsets) {
    Env env = scenario.make_env(off);
    const ExpertPlan plan = solve_expert(env, spec);
    demos.push_back(extract_demonstrations(plan, env));
  }
  return demos;
}

TrainResult train_agent(const Scenario& scenario, std::span<const Demonstration> demos,
                        const ExperimentSpec& spec) {
  auto offsets = spec.get_doubles("demo_offsets");
  if (offsets.empty()) offsets.push_back(0.0);
  TrainSetup setup;
  setup.make_env = [&scenario, offsets](std::size_t episode, std::mt19937_64&) {
    return scenario.make_env(offsets[episode % offsets.size()]);
  };
  for (double off : spec.get_doubles("val_offsets")) setup.validation.push_back(scenario.make_env(off));
  return train(setup, demos, spec_encoder(spec), static_cast<int>(scenario.space->size()),
               spec_train_config(spec));
}

namespace {

struct Run {
  fs::path out;
  std::vector<std::string> outputs;

  void put(const std::string& name, const std::string& contents) {
    text::write_file(out / name, contents);
    outputs.push_back(name);
  }
};

void write_session(Run& run, const SessionMetrics& m, const std::string& policy) {
  run.put("summary.json", metrics_summary_json(m, policy));
  run.put("chunks.csv", format_chunks_csv(m));
  run.put("accuracy_cdf.csv", format_cdf_csv(m.accuracy_cdf));
  run.put("lag_cdf.csv", format_cdf_csv(m.lag_cdf));
}

void write_manifest(Run& run, const std::string& command, const ExperimentSpec& spec) {
  ordered_json j;
  j["command"] = command;
  j["spec"] = ordered_json::object();
  for (const auto& [k, v] : spec.values()) j["spec"][k] = v;
  j["outputs"] = run.outputs;
  text::write_file(run.out / "manifest.json", j.dump(2) + "\n");
}

void print_summary(std::ostream& log, const std::string& policy, const SessionMetrics& m) {
  double max_lag = 0.0;
  for (const auto& o : m.outcomes) max_lag = std::max(max_lag, o.lag);
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s: chunks=%zu mean_accuracy=%.4f mean_lag=%.4f max_lag=%.4f\n",
                policy.c_str(), m.outcomes.size(), m.mean_accuracy, m.mean_lag, max_lag);
  log << buf;
}

Agent load_agent(const ExperimentSpec& spec, Scenario& scenario) {
  Checkpoint ckpt = load_checkpoint(spec.require("checkpoint"));
  if (ckpt.agent.arch.num_actions != static_cast<int>(scenario.space->size())) {
    throw InvalidArgument("checkpoint has " + std::to_string(ckpt.agent.arch.num_actions) +
                          " actions but the space has " + std::to_string(scenario.space->size()));
  }
  scenario.env.history = ckpt.agent.encoder.history;
  return std::move(ckpt.agent);
}

bool is_cross(const std::string& policy) { return policy == "agent+cross"; }

int cmd_simulate(Run& run, const ExperimentSpec& spec, std::ostream& log, bool eval) {
  const std::string policy = spec.get("policy", eval ? "agent" : "fixed");
  if (eval && policy != "agent" && !is_cross(policy)) {
    throw InvalidArgument("eval runs a trained agent (policy agent or agent+cross)");
  }
  Scenario scenario = load_scenario(spec, is_cross(policy));
  const double offset = spec.get_double("trace_offset", 0.0);
  SessionMetrics metrics;
  if (policy == "fixed") {
    Env env = scenario.make_env(offset);
    FixedPolicy p(static_cast<int>(spec.get_int("config_id", 0)));
    metrics = run_session(p, env);
  } else if (policy == "profiling") {
    Env env = scenario.make_env(offset);
    ProfilingPolicy p(spec_profiling(spec), scenario.profile, scenario.env.chunk_seconds,
                      scenario.env.rtt);
    metrics = run_session(p, env);
  } else if (policy == "expert") {
    Env env = scenario.make_env(offset);
    const ExpertPlan plan = solve_expert(env, spec);
    run.put("plan.csv", format_plan_csv(plan));
    PlanPolicy p(plan.config_ids);
    metrics = run_session(p, env);
  } else if (policy == "agent" || is_cross(policy)) {
    const Agent agent = load_agent(spec, scenario);
    Env env = scenario.make_env(offset);
    AgentPolicy p(agent, policy);
    metrics = run_session(p, env);
  } else {
    throw InvalidArgument("unknown policy '" + policy + "'");
  }
  write_session(run, metrics, policy);
  print_summary(log, policy, metrics);
  return 0;
}

int cmd_expert(Run& run, const ExperimentSpec& spec, std::ostream& log) {
  const Scenario scenario = load_scenario(spec);
  Env env = scenario.make_env(spec.get_double("trace_offset", 0.0));
  const LagGrid grid = spec_lag_grid(spec);
  ordered_json j;
  j["scenario"] = spec.get("scenario", "custom");
  j["max_lag"] = grid.max_lag;
  j["lag_step"] = grid.step;
  j["n_chunks"] = env.n_chunks();
  j["n_configs"] = scenario.space->size();
  ExpertPlan plan;
  try {
    plan = solve_expert(env, spec);
  } catch (const Infeasible& e) {
    j["feasible"] = false;
    j["reason"] = e.what();
    run.put("expert.json", j.dump(2) + "\n");
    log << "expert infeasible for scenario " << spec.get("scenario", "custom") << ": " << e.what()
        << "\n";
    return 3;
  }
  j["feasible"] = true;
  j["total_accuracy"] = plan.total_accuracy;
  run.put("plan.csv", format_plan_csv(plan));
  run.put("expert.json", j.dump(2) + "\n");
  PlanPolicy p(plan.config_ids);
  const SessionMetrics metrics = run_session(p, env);
  write_session(run, metrics, "expert");
  print_summary(log, "expert", metrics);
  return 0;
}

int cmd_train(Run& run, const ExperimentSpec& spec, std::ostream& log) {
  const std::string policy = spec.get("policy", "agent");
  if (policy != "agent" && !is_cross(policy)) {
    throw InvalidArgument("train builds an agent (policy agent or agent+cross)");
  }
  const Scenario scenario = load_scenario(spec, is_cross(policy));
  const TrainConfig cfg = spec_train_config(spec);
  const auto demos = collect_demonstrations(scenario, spec);
  const TrainResult result = train_agent(scenario, demos, spec);
  run.put("checkpoint.json", format_checkpoint({result.best, cfg.digest()}));
  run.put("checkpoint_last.json", format_checkpoint({result.last, cfg.digest()}));
  run.put("training_log.csv", format_training_log(result.log));
  Env env = scenario.make_env(spec.get_double("trace_offset", 0.0));
  AgentPolicy p(result.best, policy);
  const SessionMetrics metrics = run_session(p, env);
  write_session(run, metrics, policy);
  log << "trained " << cfg.epochs << " epochs, best checkpoint from epoch " << result.best.epoch
      << "\n";
  print_summary(log, policy, metrics);
  return 0;
}

int cmd_features(Run& run, const ExperimentSpec& spec, std::ostream& log) {
  const MotionLog mv = load_log_with_overrides(spec.require("mv_log"), spec);
  const int fpc = frames_per_chunk(spec, mv, spec.get_double("chunk_seconds", 1.0));
  int max_frame = -1;
  for (const auto& v : mv.vectors) max_frame = std::max(max_frame, v.frame_idx);
  const long long n = spec.get_int("chunks", max_frame < 0 ? 0 : max_frame / fpc + 1);
  if (n < 0) throw InvalidArgument("chunks must be non-negative");
  const auto maps = feature_maps(mv, fpc, static_cast<std::size_t>(n),
                                 static_cast<int>(spec.get_int("sigma", 20)));
  std::string csv = "chunk,width,height,mean_value,saturated_cells\n";
  for (std::size_t i = 0; i < maps.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "maps/chunk_%05zu.pgm", i);
    run.put(name, write_pgm(maps[i]));
    double sum = 0.0;
    std::size_t saturated = 0;
    for (auto v : maps[i].values) {
      sum += v;
      saturated += v == 255 ? 1 : 0;
    }
    const double mean = maps[i].values.empty() ? 0.0 : sum / static_cast<double>(maps[i].values.size());
    csv += std::to_string(i) + ',' + std::to_string(maps[i].width) + ',' +
           std::to_string(maps[i].height) + ',' + text::format_double(mean) + ',' +
           std::to_string(saturated) + '\n';
  }
  run.put("features.csv", csv);
  log << "wrote " << maps.size() << " feature maps\n";
  return 0;
}

int cmd_correlate(Run& run, const ExperimentSpec& spec, std::ostream& log) {
  const TrajectoryLog traj = load_trajectory_log(spec.require("trajectory_log"));
  int rows = 24;
  int cols = 40;
  if (spec.has("source_mv_log")) {
    const MotionLog src = load_log_with_overrides(spec.get("source_mv_log"), spec);
    rows = microblocks(src.frame_h);
    cols = microblocks(src.frame_w);
  }
  const SelectOptions opts = select_options(spec, rows, cols);
  std::vector<ShareRule> rules;
  const auto targets = spec.has("target_camera") ? std::vector<std::string>{spec.get("target_camera")}
                                                 : traj.cameras();
  for (const auto& t : targets) {
    for (auto& r : select_sources(traj, t, opts)) rules.push_back(std::move(r));
  }
  run.put("correlation.json", correlation_report_json(correlation_matrix(traj), rules));
  for (const auto& r : rules) {
    char buf[200];
    std::snprintf(buf, sizeof buf, "rule %s->%s S=%.3f T=%.3f window=[%.1f,%.1f] dir=%d exit=(%d,%d)\n",
                  r.source.c_str(), r.target.c_str(), r.spatial, r.temporal, r.t1, r.t2,
                  r.direction, r.exit_row, r.exit_col);
    log << buf;
  }
  if (rules.empty()) log << "no share rules pass the thresholds\n";
  return 0;
}

int cmd_report(Run& run, const ExperimentSpec& spec, std::ostream& log) {
  const auto runs = split_list(spec.require("runs"));
  std::string csv = "run,policy,n_chunks,mean_accuracy,mean_lag,max_lag,total_bytes\n";
  for (const auto& dir : runs) {
    const auto j = ordered_json::parse(text::read_file(fs::path(dir) / "summary.json"));
    csv += fs::path(dir).filename().string() + ',' + j.at("policy").get<std::string>() + ',' +
           std::to_string(j.at("n_chunks").get<long long>()) + ',' +
           text::format_double(j.at("mean_accuracy").get<double>()) + ',' +
           text::format_double(j.at("mean_lag").get<double>()) + ',' +
           text::format_double(j.at("max_lag").get<double>()) + ',' +
           std::to_string(j.at("total_bytes").get<long long>()) + '\n';
  }
  run.put("comparison.csv", csv);
  log << csv;
  return 0;
}

int cmd_demo(Run& run, const ExperimentSpec& spec, std::ostream& log) {
  const auto seed = static_cast<std::uint64_t>(spec.get_int("seed", 2026));
  for (auto& name : write_demo_assets(run.out, seed)) run.outputs.push_back(name);
  log << "wrote " << run.outputs.size() << " demo assets to " << run.out.string() << "\n";
  return 0;
}

}  // namespace

int run_command(const std::string& command, const ExperimentSpec& spec, std::ostream& log) {
  Run run;
  run.out = spec.require("out");
  int code = 0;
  if (command == "simulate") code = cmd_simulate(run, spec, log, false);
  else if (command == "eval") code = cmd_simulate(run, spec, log, true);
  else if (command == "expert") code = cmd_expert(run, spec, log);
  else if (command == "train") code = cmd_train(run, spec, log);
  else if (command == "features") code = cmd_features(run, spec, log);
  else if (command == "correlate") code = cmd_correlate(run, spec, log);
  else if (command == "report") code = cmd_report(run, spec, log);
  else if (command == "demo") code = cmd_demo(run, spec, log);
  else throw InvalidArgument("unknown command '" + command + "'");
  write_manifest(run, command, spec);
  return code;
}

}  // namespace vastream
