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

#include "vastream/gail.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vastream/error.hpp"
#include "vastream/text.hpp"

namespace vastream {

using nn::Matrix;
using nn::RowVector;
using nn::Vector;

nn::Vector pool_map(const MotionFeatureMap& map, int pool) {
  if (pool <= 0) throw InvalidArgument("pool size must be positive");
  Vector out = Vector::Zero(pool * pool);
  if (map.empty() || map.width <= 0 || map.height <= 0) return out;
  for (int pr = 0; pr < pool; ++pr) {
    const int r0 = pr * map.height / pool;
    const int r1 = std::max(r0 + 1, (pr + 1) * map.height / pool);
    for (int pc = 0; pc < pool; ++pc) {
      const int c0 = pc * map.width / pool;
      const int c1 = std::max(c0 + 1, (pc + 1) * map.width / pool);
      double sum = 0.0;
      int n = 0;
      for (int r = r0; r < std::min(r1, map.height); ++r) {
        for (int c = c0; c < std::min(c1, map.width); ++c) {
          sum += map.at(r, c);
          ++n;
        }
      }
      out(pr * pool + pc) = n > 0 ? sum / (255.0 * n) : 0.0;
    }
  }
  return out;
}

nn::Vector encode_state(const StateObservation& state, const EncoderOptions& options) {
  const std::size_t k = options.history;
  if (state.history() != k) {
    throw InvalidArgument("state history " + std::to_string(state.history()) +
                          " does not match encoder history " + std::to_string(k));
  }
  if (!(options.max_lag > 0.0) || !(options.delay_scale > 0.0)) {
    throw InvalidArgument("encoder scales must be positive");
  }
  Vector x = Vector::Zero(static_cast<Eigen::Index>(options.width()));
  const auto put = [&](std::size_t block, const std::vector<double>& h, double scale) {
    for (std::size_t t = 0; t < k; ++t) x(static_cast<Eigen::Index>(block * k + t)) = h[t] / scale;
  };
  put(0, state.sizes, kSizeScale);
  put(1, state.throughputs, kThroughputScale);
  put(2, state.delays, options.delay_scale);
  put(3, state.buffers, options.max_lag);
  put(4, state.resolutions, 1.0);
  put(5, state.fps, kMaxFps);
  put(6, state.qps, kMaxQp);
  x(options.shortcut_index()) = state.buffer / options.max_lag;
  if (state.motion) {
    x.tail(options.pool * options.pool) = pool_map(*state.motion, options.pool);
  }
  return x;
}

void TrainConfig::validate() const {
  if (!(lr > 0.0) || !(disc_lr > 0.0)) throw InvalidArgument("learning rates must be positive");
  if (!(gamma > 0.0 && gamma <= 1.0)) throw InvalidArgument("gamma must lie in (0, 1]");
  if (!(clip >= 0.0 && clip < 1.0)) throw InvalidArgument("clip must lie in [0, 1)");
  if (epochs < 0 || rollouts_per_epoch < 1 || minibatch < 1 || ppo_epochs < 1 || disc_epochs < 0 ||
      eval_every < 1) {
    throw InvalidArgument("training schedule counts out of range");
  }
  if (hidden < 1 || disc_hidden < 1) throw InvalidArgument("hidden widths must be positive");
  if (!(ablation_alpha >= 0.0 && ablation_alpha <= 1.0)) {
    throw InvalidArgument("ablation alpha must lie in [0, 1]");
  }
}

std::string TrainConfig::digest() const {
  using text::format_double;
  std::string s;
  for (double v : {lr, disc_lr, gamma, clip, entropy_coef, max_grad_norm, init_scale,
                   ablation_alpha}) {
    s += format_double(v) + ';';
  }
  for (long long v : {static_cast<long long>(epochs), static_cast<long long>(rollouts_per_epoch),
                      static_cast<long long>(minibatch), static_cast<long long>(ppo_epochs),
                      static_cast<long long>(disc_epochs), static_cast<long long>(hidden),
                      static_cast<long long>(disc_hidden), static_cast<long long>(eval_every),
                      static_cast<long long>(normalize_advantages),
                      static_cast<long long>(reward)}) {
    s += std::to_string(v) + ';';
  }
  s += std::to_string(seed);
  return text::hex64(text::fnv1a64(s));
}

double gail_reward(double d) { return std::log(std::max(d, 1e-8)); }

std::vector<double> discounted_returns(std::span<const double> rewards, double gamma) {
  std::vector<double> out(rewards.size());
  double acc = 0.0;
  for (std::size_t i = rewards.size(); i-- > 0;) {
    acc = rewards[i] + gamma * acc;
    out[i] = acc;
  }
  return out;
}

PairBatch expert_pairs(std::span<const Demonstration> demos, const EncoderOptions& options) {
  std::size_t n = 0;
  for (const auto& d : demos) n += d.steps.size();
  PairBatch batch;
  batch.states.resize(static_cast<Eigen::Index>(options.width()), static_cast<Eigen::Index>(n));
  batch.actions.reserve(n);
  Eigen::Index col = 0;
  for (const auto& d : demos) {
    for (const auto& s : d.steps) {
      batch.states.col(col++) = encode_state(s.state, options);
      batch.actions.push_back(s.action);
    }
  }
  return batch;
}

double discriminator_loss(const nn::Discriminator& disc, const PairBatch& expert,
                          const PairBatch& agent, nn::Grads* grads) {
  if (expert.size() == 0 || agent.size() == 0) {
    throw InvalidArgument("discriminator update needs expert and agent pairs");
  }
  const auto ne = static_cast<Eigen::Index>(expert.size());
  const auto na = static_cast<Eigen::Index>(agent.size());
  Matrix x(expert.states.rows(), ne + na);
  x.leftCols(ne) = expert.states;
  x.rightCols(na) = agent.states;
  std::vector<int> actions(expert.actions);
  actions.insert(actions.end(), agent.actions.begin(), agent.actions.end());

  nn::Discriminator::Cache cache;
  const Matrix& z = disc.forward(x, actions, cache);
  const double n = static_cast<double>(ne + na);
  double loss = 0.0;
  Matrix d_z(1, ne + na);
  for (Eigen::Index j = 0; j < ne + na; ++j) {
    const bool is_expert = j < ne;
    loss += is_expert ? nn::softplus(-z(0, j)) : nn::softplus(z(0, j));
    d_z(0, j) = (nn::sigmoid(z(0, j)) - (is_expert ? 1.0 : 0.0)) / n;
  }
  if (grads) *grads = disc.backward(cache, d_z);
  return loss / n;
}

double discriminator_update(nn::Discriminator& disc, const PairBatch& expert,
                            const PairBatch& agent, double lr) {
  nn::Grads g;
  const double loss = discriminator_loss(disc, expert, agent, &g);
  nn::sgd_step(disc.params(), g, lr);
  return loss;
}

double discriminator_update(nn::Discriminator& disc, const PairBatch& expert,
                            const PairBatch& agent, nn::Adam& optimizer, double max_grad_norm) {
  nn::Grads g;
  const double loss = discriminator_loss(disc, expert, agent, &g);
  nn::clip_global_norm(g, max_grad_norm);
  optimizer.step(disc.params(), g);
  return loss;
}

double ppo_policy_loss(const nn::PolicyNet& policy, const PpoBatch& batch, double clip,
                       double entropy_coef, nn::Grads* grads, SurrogateStats* stats) {
  const auto n = static_cast<Eigen::Index>(batch.actions.size());
  if (n == 0) throw InvalidArgument("empty PPO batch");
  if (batch.states.cols() != n || batch.old_log_probs.size() != n || batch.advantages.size() != n) {
    throw InvalidArgument("PPO batch fields differ in length");
  }
  nn::PolicyNet::Cache cache;
  const Matrix& probs = policy.forward(batch.states, cache);
  const double inv_n = 1.0 / static_cast<double>(n);
  Matrix d_logits(probs.rows(), n);
  double surrogate = 0.0;
  double entropy = 0.0;
  double ratio_sum = 0.0;
  int clipped = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const auto p = probs.col(t);
    const int a = batch.actions[static_cast<std::size_t>(t)];
    const double log_p = std::log(std::max(p(a), std::numeric_limits<double>::min()));
    const double ratio = std::exp(log_p - batch.old_log_probs(t));
    const double adv = batch.advantages(t);
    const double unclipped = ratio * adv;
    const double clamped = std::clamp(ratio, 1.0 - clip, 1.0 + clip) * adv;
    surrogate += std::min(unclipped, clamped);
    const double coef = unclipped <= clamped ? ratio * adv : 0.0;
    if (ratio < 1.0 - clip || ratio > 1.0 + clip) ++clipped;
    ratio_sum += ratio;

    double h = 0.0;
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      if (p(k) > 0.0) h -= p(k) * std::log(p(k));
    }
    entropy += h;
    for (Eigen::Index k = 0; k < p.size(); ++k) {
      const double plogp_term = p(k) > 0.0 ? p(k) * (std::log(p(k)) + h) : 0.0;
      const double onehot = k == a ? 1.0 : 0.0;
      d_logits(k, t) = -coef * inv_n * (onehot - p(k)) + entropy_coef * inv_n * plogp_term;
    }
  }
  if (grads) *grads = policy.backward(cache, d_logits);
  if (stats) {
    stats->mean_ratio = ratio_sum * inv_n;
    stats->clip_fraction = clipped * inv_n;
    stats->entropy = entropy * inv_n;
  }
  return -surrogate * inv_n - entropy_coef * entropy * inv_n;
}

double value_loss(const nn::ValueNet& value, const nn::Matrix& states, const nn::RowVector& returns,
                  nn::Grads* grads) {
  const auto n = states.cols();
  if (n == 0 || returns.size() != n) throw InvalidArgument("value batch fields differ in length");
  nn::ValueNet::Cache cache;
  const Matrix& v = value.forward(states, cache);
  const Matrix diff = v - Matrix(returns);
  if (grads) *grads = value.backward(cache, 2.0 * diff / static_cast<double>(n));
  return diff.squaredNorm() / static_cast<double>(n);
}

PpoStats ppo_update(nn::PolicyNet& policy, nn::ValueNet& value,
                    std::span<const Trajectory> trajectories, const TrainConfig& cfg,
                    PpoOptimizers& optimizers, std::mt19937_64& rng) {
  std::size_t n = 0;
  for (const auto& tr : trajectories) n += tr.size();
  if (n == 0) throw InvalidArgument("ppo_update needs at least one transition");

  const Eigen::Index width = trajectories.front().front().state.size();
  Matrix states(width, static_cast<Eigen::Index>(n));
  std::vector<int> actions;
  RowVector old_logp(static_cast<Eigen::Index>(n));
  RowVector returns(static_cast<Eigen::Index>(n));
  RowVector adv(static_cast<Eigen::Index>(n));
  Eigen::Index col = 0;
  for (const auto& tr : trajectories) {
    std::vector<double> rewards;
    for (const auto& s : tr) rewards.push_back(s.reward);
    const auto ret = discounted_returns(rewards, cfg.gamma);
    for (std::size_t t = 0; t < tr.size(); ++t, ++col) {
      states.col(col) = tr[t].state;
      actions.push_back(tr[t].action);
      old_logp(col) = tr[t].log_prob;
      returns(col) = ret[t];
      adv(col) = ret[t] - tr[t].value;
    }
  }
  if (cfg.normalize_advantages && n > 1) {
    const double mean = adv.mean();
    const double sd = std::sqrt((adv.array() - mean).square().mean());
    adv = ((adv.array() - mean) / (sd + 1e-8)).matrix();
  }

  PpoStats stats;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const auto mb = static_cast<std::size_t>(cfg.minibatch);
  int batches = 0;
  bool first = true;
  for (int epoch = 0; epoch < cfg.ppo_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t lo = 0; lo < n; lo += mb) {
      const std::size_t hi = std::min(n, lo + mb);
      const auto m = static_cast<Eigen::Index>(hi - lo);
      PpoBatch batch;
      batch.states.resize(width, m);
      batch.old_log_probs.resize(m);
      batch.advantages.resize(m);
      batch.returns.resize(m);
      for (std::size_t i = lo; i < hi; ++i) {
        const auto j = static_cast<Eigen::Index>(i - lo);
        const auto src = static_cast<Eigen::Index>(order[i]);
        batch.states.col(j) = states.col(src);
        batch.actions.push_back(actions[order[i]]);
        batch.old_log_probs(j) = old_logp(src);
        batch.advantages(j) = adv(src);
        batch.returns(j) = returns(src);
      }
      nn::Grads gp;
      SurrogateStats ss;
      stats.policy_loss += ppo_policy_loss(policy, batch, cfg.clip, cfg.entropy_coef, &gp, &ss);
      if (first) {
        stats.first_pass_mean_ratio = ss.mean_ratio;
        first = false;
      }
      stats.entropy += ss.entropy;
      nn::clip_global_norm(gp, cfg.max_grad_norm);
      optimizers.policy.step(policy.params(), gp);

      nn::Grads gv;
      stats.value_loss += value_loss(value, batch.states, batch.returns, &gv);
      nn::clip_global_norm(gv, cfg.max_grad_norm);
      optimizers.value.step(value.params(), gv);
      ++batches;
    }
  }
  stats.policy_loss /= batches;
  stats.value_loss /= batches;
  stats.entropy /= batches;
  return stats;
}

Agent make_agent(const EncoderOptions& encoder, int num_actions, const TrainConfig& cfg) {
  cfg.validate();
  Agent agent;
  agent.arch.input_dim = static_cast<int>(encoder.width());
  agent.arch.hidden = cfg.hidden;
  agent.arch.num_actions = num_actions;
  agent.arch.disc_hidden = cfg.disc_hidden;
  agent.arch.shortcut_index = encoder.shortcut_index();
  agent.encoder = encoder;
  agent.seed = cfg.seed;
  std::mt19937_64 rng(cfg.seed);
  agent.policy = nn::PolicyNet(agent.arch, rng, cfg.init_scale);
  agent.value = nn::ValueNet(agent.arch, rng, cfg.init_scale);
  agent.disc = nn::Discriminator(agent.arch, rng, cfg.init_scale);
  return agent;
}

int sample_action(const nn::Vector& probs, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double u = unit(rng);
  double acc = 0.0;
  for (Eigen::Index k = 0; k < probs.size(); ++k) {
    acc += probs(k);
    if (u < acc) return static_cast<int>(k);
  }
  // rounding left u above the total; take the last action with mass
  for (Eigen::Index k = probs.size(); k-- > 0;) {
    if (probs(k) > 0.0) return static_cast<int>(k);
  }
  return 0;
}

AgentPolicy::AgentPolicy(const Agent& agent, std::string name)
    : agent_(&agent), greedy_(true), seed_(0), name_(std::move(name)) {}

AgentPolicy::AgentPolicy(const Agent& agent, std::uint64_t sample_seed, std::string name)
    : agent_(&agent), greedy_(false), seed_(sample_seed), rng_(sample_seed), name_(std::move(name)) {}

void AgentPolicy::reset() { rng_.seed(seed_); }

int AgentPolicy::act(const StateObservation& state) {
  const Vector p = agent_->policy.probabilities(encode_state(state, agent_->encoder));
  if (!greedy_) return sample_action(p, rng_);
  Eigen::Index best = 0;
  p.maxCoeff(&best);
  return static_cast<int>(best);
}

Trajectory rollout(const Agent& agent, Env& env, std::mt19937_64& rng) {
  Trajectory out;
  out.reserve(env.n_chunks());
  StateObservation state = env.reset();
  while (!env.done()) {
    Transition tr;
    tr.state = encode_state(state, agent.encoder);
    const Vector p = agent.policy.probabilities(tr.state);
    tr.action = sample_action(p, rng);
    tr.log_prob = std::log(std::max(p(tr.action), std::numeric_limits<double>::min()));
    tr.value = agent.value.value(tr.state);
    auto step = env.step(tr.action);
    tr.accuracy = step.outcome.accuracy;
    tr.lag = step.outcome.lag;
    out.push_back(std::move(tr));
    state = std::move(step.next);
  }
  return out;
}

std::string format_training_log(std::span<const EpochLog> log) {
  std::string out = "epoch,mean_disc_loss,mean_policy_loss,mean_reward,val_mean_accuracy,val_mean_lag\n";
  for (const auto& e : log) {
    out += std::to_string(e.epoch) + ',' + text::format_double(e.mean_disc_loss) + ',' +
           text::format_double(e.mean_policy_loss) + ',' + text::format_double(e.mean_reward) +
           ',' + text::format_double(e.val_mean_accuracy) + ',' +
           text::format_double(e.val_mean_lag) + '\n';
  }
  return out;
}

double validation_score(double mean_accuracy, double mean_lag, double max_lag) {
  return mean_accuracy - std::max(0.0, mean_lag - max_lag);
}

namespace {

struct Validation {
  double accuracy = 0.0;
  double lag = 0.0;
};

Validation validate(const Agent& agent, const std::vector<Env>& envs) {
  Validation v;
  if (envs.empty()) return v;
  for (Env env : envs) {
    AgentPolicy policy(agent);
    const auto m = run_session(policy, env);
    v.accuracy += m.mean_accuracy;
    v.lag += m.mean_lag;
  }
  v.accuracy /= static_cast<double>(envs.size());
  v.lag /= static_cast<double>(envs.size());
  return v;
}

PairBatch gather(const PairBatch& from, std::span<const std::size_t> idx) {
  PairBatch out;
  out.states.resize(from.states.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.states.col(static_cast<Eigen::Index>(i)) = from.states.col(static_cast<Eigen::Index>(idx[i]));
    out.actions.push_back(from.actions[idx[i]]);
  }
  return out;
}

}  // namespace

TrainResult train(const TrainSetup& setup, std::span<const Demonstration> demos,
                  const EncoderOptions& encoder, int num_actions, const TrainConfig& cfg) {
  cfg.validate();
  if (demos.empty()) throw InvalidArgument("training needs at least one demonstration");
  if (!setup.make_env) throw InvalidArgument("training needs an env factory");

  TrainResult result;
  Agent agent = make_agent(encoder, num_actions, cfg);
  std::mt19937_64 rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
  const PairBatch expert = expert_pairs(demos, encoder);
  if (expert.size() == 0) throw InvalidArgument("demonstrations are empty");

  PpoOptimizers optimizers{nn::Adam(cfg.lr), nn::Adam(cfg.lr)};
  nn::Adam disc_opt(cfg.disc_lr);

  const bool has_validation = !setup.validation.empty();
  result.best = agent;
  result.best_score = -std::numeric_limits<double>::infinity();
  if (has_validation) {
    const auto v = validate(agent, setup.validation);
    result.best_score = validation_score(v.accuracy, v.lag, encoder.max_lag);
  }

  std::size_t episode = 0;
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::vector<Trajectory> trajectories;
    for (int r = 0; r < cfg.rollouts_per_epoch; ++r) {
      Env env = setup.make_env(episode++, rng);
      trajectories.push_back(rollout(agent, env, rng));
    }
    PairBatch agent_pairs;
    std::size_t n = 0;
    for (const auto& tr : trajectories) n += tr.size();
    agent_pairs.states.resize(static_cast<Eigen::Index>(encoder.width()), static_cast<Eigen::Index>(n));
    {
      Eigen::Index col = 0;
      for (const auto& tr : trajectories) {
        for (const auto& s : tr) {
          agent_pairs.states.col(col++) = s.state;
          agent_pairs.actions.push_back(s.action);
        }
      }
    }

    EpochLog log;
    log.epoch = epoch;
    if (cfg.reward == RewardMode::kGail) {
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      std::uniform_int_distribution<std::size_t> pick(0, expert.size() - 1);
      const auto mb = static_cast<std::size_t>(cfg.minibatch);
      int steps = 0;
      for (int e = 0; e < cfg.disc_epochs; ++e) {
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t lo = 0; lo < n; lo += mb) {
          const std::size_t hi = std::min(n, lo + mb);
          std::vector<std::size_t> eidx(hi - lo);
          for (auto& i : eidx) i = pick(rng);
          const auto agent_idx = std::span<const std::size_t>(order).subspan(lo, hi - lo);
          log.mean_disc_loss += discriminator_update(agent.disc, gather(expert, eidx),
                                                     gather(agent_pairs, agent_idx), disc_opt,
                                                     cfg.max_grad_norm);
          ++steps;
        }
      }
      if (steps > 0) log.mean_disc_loss /= steps;

      const RowVector d = agent.disc.probabilities(agent_pairs.states, agent_pairs.actions);
      Eigen::Index col = 0;
      for (auto& tr : trajectories) {
        for (auto& s : tr) s.reward = gail_reward(d(col++));
      }
    } else {
      for (auto& tr : trajectories) {
        for (auto& s : tr) {
          s.reward = cfg.ablation_alpha * s.accuracy - (1.0 - cfg.ablation_alpha) * s.lag;
        }
      }
    }
    double reward_sum = 0.0;
    for (const auto& tr : trajectories) {
      for (const auto& s : tr) reward_sum += s.reward;
    }
    log.mean_reward = reward_sum / static_cast<double>(n);

    const PpoStats stats =
        ppo_update(agent.policy, agent.value, trajectories, cfg, optimizers, rng);
    log.mean_policy_loss = stats.policy_loss;
    agent.epoch = epoch;

    if (has_validation && (epoch % cfg.eval_every == 0 || epoch == cfg.epochs)) {
      const auto v = validate(agent, setup.validation);
      log.val_mean_accuracy = v.accuracy;
      log.val_mean_lag = v.lag;
      const double score = validation_score(v.accuracy, v.lag, encoder.max_lag);
      if (score > result.best_score) {
        result.best_score = score;
        result.best = agent;
      }
    }
    result.log.push_back(log);
  }
  result.last = agent;
  if (!has_validation) result.best = agent;
  return result;
}

}  // namespace vastream
