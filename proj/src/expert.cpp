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

#include "vastream/expert.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "vastream/error.hpp"
#include "vastream/text.hpp"

namespace vastream {

namespace {

constexpr double kGridEps = 1e-9;

}  // namespace

void LagGrid::validate() const {
  if (!(step > 0.0)) throw InvalidArgument("lag grid step must be positive");
  if (!(max_lag >= 0.0)) throw InvalidArgument("max lag must be non-negative");
}

std::size_t LagGrid::cells() const {
  validate();
  return static_cast<std::size_t>(std::floor(max_lag / step + kGridEps)) + 1;
}

std::optional<std::size_t> LagGrid::quantize(double lag) const {
  const double x = std::max(lag, 0.0) / step;
  const double q = rounding == LagRounding::kCeil ? std::ceil(x - kGridEps) : std::floor(x + 0.5);
  const double last = static_cast<double>(cells() - 1);
  if (q > last) return std::nullopt;
  return static_cast<std::size_t>(std::max(q, 0.0));
}

DelayTable::DelayTable(std::size_t n_chunks, std::size_t n_configs, std::vector<double> delays)
    : n_chunks_(n_chunks), n_configs_(n_configs), delays_(std::move(delays)) {
  if (delays_.size() != n_chunks_ * n_configs_) throw InvalidArgument("delay table size mismatch");
  for (double u : delays_) {
    if (!(u >= 0.0)) throw InvalidArgument("delays must be non-negative");
  }
}

LagAwareDelays::LagAwareDelays(std::size_t n_chunks, std::size_t n_cells, std::size_t n_configs,
                               std::vector<double> delays)
    : n_chunks_(n_chunks), n_cells_(n_cells), n_configs_(n_configs), delays_(std::move(delays)) {
  if (delays_.size() != n_chunks_ * n_cells_ * n_configs_) {
    throw InvalidArgument("delay table size mismatch");
  }
}

DelayTable nominal_delays(const VideoProfile& profile, const NetworkTrace& trace,
                          double chunk_seconds, double rtt) {
  std::vector<double> u;
  u.reserve(profile.n_chunks() * profile.n_configs());
  for (std::size_t i = 0; i < profile.n_chunks(); ++i) {
    const double start = static_cast<double>(i) * chunk_seconds;
    for (std::size_t c = 0; c < profile.n_configs(); ++c) {
      u.push_back(upload_delay(static_cast<double>(profile.size_bytes(i, c)), trace, start, rtt));
    }
  }
  return DelayTable(profile.n_chunks(), profile.n_configs(), std::move(u));
}

LagAwareDelays lag_aware_delays(const VideoProfile& profile, const NetworkTrace& trace,
                                const LagGrid& grid, double chunk_seconds, double rtt) {
  const std::size_t cells = grid.cells();
  std::vector<double> u;
  u.reserve(profile.n_chunks() * cells * profile.n_configs());
  for (std::size_t i = 0; i < profile.n_chunks(); ++i) {
    for (std::size_t j = 0; j < cells; ++j) {
      const double start = static_cast<double>(i) * chunk_seconds + grid.value(j);
      for (std::size_t c = 0; c < profile.n_configs(); ++c) {
        u.push_back(upload_delay(static_cast<double>(profile.size_bytes(i, c)), trace, start, rtt));
      }
    }
  }
  return LagAwareDelays(profile.n_chunks(), cells, profile.n_configs(), std::move(u));
}

namespace {

// Delay(i, j, c) -> seconds
template <typename Delay>
ExpertPlan solve(const VideoProfile& profile, const Delay& delay, const LagGrid& grid,
                 double chunk_seconds) {
  grid.validate();
  if (!(chunk_seconds > 0.0)) throw InvalidArgument("chunk length must be positive");
  const std::size_t n = profile.n_chunks();
  const std::size_t n_cfg = profile.n_configs();
  if (n == 0 || n_cfg == 0) throw InvalidArgument("empty profile");
  const std::size_t cells = grid.cells();
  const double last = static_cast<double>(cells - 1);
  const bool ceil_mode = grid.rounding == LagRounding::kCeil;
  const auto quantize = [&](double lag) -> std::optional<std::size_t> {
    const double x = lag / grid.step;
    const double q = ceil_mode ? std::ceil(x - kGridEps) : std::floor(x + 0.5);
    if (q > last) return std::nullopt;
    return static_cast<std::size_t>(std::max(q, 0.0));
  };

  // A: best accumulated accuracy ending in (i, j); S: config of chunk i;
  // Q: lag cell of chunk i - 1 on that path. S < 0 marks an empty cell.
  std::vector<double> acc_best(n * cells, 0.0);
  std::vector<int> chosen(n * cells, -1);
  std::vector<int> parent(n * cells, -1);
  const auto at = [cells](std::size_t i, std::size_t j) { return i * cells + j; };

  for (std::size_t c = 0; c < n_cfg; ++c) {
    const auto l = quantize(std::max(0.0, delay(0, 0, c) - chunk_seconds));
    if (!l) continue;
    const double a = profile.accuracy(0, c);
    const std::size_t k = at(0, *l);
    if (chosen[k] < 0 || a > acc_best[k]) {
      acc_best[k] = a;
      chosen[k] = static_cast<int>(c);
    }
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    bool any = false;
    for (std::size_t jj = cells; jj-- > 0;) {
      const std::size_t from = at(i, jj);
      if (chosen[from] < 0) continue;
      any = true;
      const double lag = grid.value(jj);
      const auto acc_row = profile.accuracy_row(i + 1);
      for (std::size_t c = 0; c < n_cfg; ++c) {
        const auto l = quantize(std::max(0.0, lag + delay(i + 1, jj, c) - chunk_seconds));
        if (!l) continue;
        const double a = acc_best[from] + acc_row[c];
        const std::size_t to = at(i + 1, *l);
        if (chosen[to] < 0 || a > acc_best[to]) {
          acc_best[to] = a;
          chosen[to] = static_cast<int>(c);
          parent[to] = static_cast<int>(jj);
        }
      }
    }
    if (!any) throw Infeasible("no configuration keeps the lag bounded at chunk " + std::to_string(i));
  }

  int best = -1;
  for (std::size_t j = 0; j < cells; ++j) {
    const std::size_t k = at(n - 1, j);
    if (chosen[k] >= 0 && (best < 0 || acc_best[k] > acc_best[at(n - 1, static_cast<std::size_t>(best))])) {
      best = static_cast<int>(j);
    }
  }
  if (best < 0) {
    throw Infeasible("no configuration keeps the lag bounded at chunk " + std::to_string(n - 1));
  }

  ExpertPlan plan;
  plan.config_ids.resize(n);
  plan.lags.resize(n);
  plan.total_accuracy = acc_best[at(n - 1, static_cast<std::size_t>(best))];
  int j = best;
  for (std::size_t i = n; i-- > 0;) {
    const std::size_t k = at(i, static_cast<std::size_t>(j));
    plan.config_ids[i] = chosen[k];
    plan.lags[i] = grid.value(static_cast<std::size_t>(j));
    j = parent[k];
  }
  return plan;
}

void check_table(const VideoProfile& profile, std::size_t chunks, std::size_t configs) {
  if (profile.n_chunks() == 0) throw InvalidArgument("empty profile");
  if (chunks != profile.n_chunks() || configs != profile.n_configs()) {
    throw InvalidArgument("delay table does not match the profile");
  }
}

}  // namespace

ExpertPlan expert_plan(const VideoProfile& profile, const DelayTable& delays, const LagGrid& grid,
                       double chunk_seconds) {
  check_table(profile, delays.n_chunks(), delays.n_configs());
  return solve(
      profile, [&](std::size_t i, std::size_t, std::size_t c) { return delays.at(i, c); }, grid,
      chunk_seconds);
}

ExpertPlan expert_plan(const VideoProfile& profile, const LagAwareDelays& delays,
                       const LagGrid& grid, double chunk_seconds) {
  check_table(profile, delays.n_chunks(), delays.n_configs());
  if (delays.n_cells() != grid.cells()) throw InvalidArgument("delay table does not match the grid");
  return solve(
      profile, [&](std::size_t i, std::size_t j, std::size_t c) { return delays.at(i, j, c); },
      grid, chunk_seconds);
}

ExpertPlan brute_force_plan(const VideoProfile& profile, const DelayTable& delays, double max_lag,
                            double chunk_seconds, double max_sequences) {
  check_table(profile, delays.n_chunks(), delays.n_configs());
  const std::size_t n = profile.n_chunks();
  const std::size_t n_cfg = profile.n_configs();
  if (std::pow(static_cast<double>(n_cfg), static_cast<double>(n)) > max_sequences) {
    throw InvalidArgument("instance too large for brute force");
  }
  const double bound = max_lag + kGridEps;

  std::vector<int> seq(n);
  std::vector<double> lags(n);
  ExpertPlan best;
  bool found = false;

  std::function<void(std::size_t, double, double)> search = [&](std::size_t i, double lag,
                                                                 double total) {
    if (i == n) {
      if (!found || total > best.total_accuracy) {
        found = true;
        best.config_ids = seq;
        best.lags = lags;
        best.total_accuracy = total;
      }
      return;
    }
    for (std::size_t c = 0; c < n_cfg; ++c) {
      const double next = std::max(lag + delays.at(i, c) - chunk_seconds, 0.0);
      if (next > bound) continue;
      seq[i] = static_cast<int>(c);
      lags[i] = next;
      search(i + 1, next, total + profile.accuracy(i, c));
    }
  };
  search(0, 0.0, 0.0);
  if (!found) throw Infeasible("every configuration sequence exceeds the lag bound");
  return best;
}

PlanPolicy::PlanPolicy(std::vector<int> config_ids, std::string name)
    : ids_(std::move(config_ids)), name_(std::move(name)) {}

int PlanPolicy::act(const StateObservation& state) {
  if (state.chunk_idx >= ids_.size()) throw Error("plan shorter than the session");
  return ids_[state.chunk_idx];
}

Demonstration extract_demonstrations(const ExpertPlan& plan, Env& env) {
  if (plan.config_ids.size() != env.n_chunks()) {
    throw InvalidArgument("plan length " + std::to_string(plan.config_ids.size()) +
                          " does not match " + std::to_string(env.n_chunks()) + " chunks");
  }
  Demonstration demo;
  StateObservation state = env.reset();
  std::vector<ChunkOutcome> outcomes;
  for (int action : plan.config_ids) {
    demo.steps.push_back({state, action});
    auto step = env.step(action);
    outcomes.push_back(step.outcome);
    state = std::move(step.next);
  }
  demo.replay = summarize(std::move(outcomes));
  return demo;
}

std::string format_plan_csv(const ExpertPlan& plan) {
  std::string out = "chunk_idx,config_id\n";
  for (std::size_t i = 0; i < plan.config_ids.size(); ++i) {
    out += std::to_string(i) + ',' + std::to_string(plan.config_ids[i]) + '\n';
  }
  return out;
}

std::vector<int> parse_plan_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<int> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::is_skippable(line) || text::trim(line) == "chunk_idx,config_id") continue;
    const auto f = text::split_csv(line);
    if (f.size() != 2) throw ParseError("expected 'chunk_idx,config_id'", line_no);
    const auto idx = text::parse_int(f[0], line_no);
    if (idx != static_cast<std::int64_t>(ids.size())) throw ParseError("chunk indices must be dense", line_no);
    ids.push_back(static_cast<int>(text::parse_int(f[1], line_no)));
  }
  return ids;
}

}  // namespace vastream
