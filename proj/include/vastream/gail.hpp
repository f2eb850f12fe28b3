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

#ifndef VASTREAM_GAIL_HPP_
#define VASTREAM_GAIL_HPP_

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "vastream/expert.hpp"
#include "vastream/nn.hpp"
#include "vastream/simulator.hpp"

namespace vastream {

// Layout of the encoded state, k = history:
//   [sizes/1e6 | throughputs/250e3 | delays/delay_scale | buffers/max_lag |
//    resolution | fps/30 | qp/41 | b/max_lag | pooled map / 255]
// The b scalar at index 7k also feeds the trunk shortcut.
struct EncoderOptions {
  std::size_t history = 8;
  double max_lag = 1.0;
  double delay_scale = 10.0;
  int pool = 16;

  std::size_t width() const { return 7 * history + 1 + static_cast<std::size_t>(pool * pool); }
  int shortcut_index() const { return static_cast<int>(7 * history); }
  friend bool operator==(const EncoderOptions&, const EncoderOptions&) = default;
};

inline constexpr double kSizeScale = 1e6;
inline constexpr double kThroughputScale = 250'000.0;

// Average-pools a map onto a pool x pool grid of values in [0, 1]. An empty
// map pools to zeros.
nn::Vector pool_map(const MotionFeatureMap& map, int pool);

nn::Vector encode_state(const StateObservation& state, const EncoderOptions& options);

enum class RewardMode {
  kGail,        // log D(s, a)
  kFixedReward  // alpha * accuracy - (1 - alpha) * lag
};

struct TrainConfig {
  double lr = 1e-4;
  double disc_lr = 1e-4;
  double gamma = 0.95;
  double clip = 0.2;
  double entropy_coef = 0.02;
  double max_grad_norm = 5.0;
  int epochs = 100;
  int rollouts_per_epoch = 4;
  int minibatch = 64;
  int ppo_epochs = 4;
  int disc_epochs = 1;
  bool normalize_advantages = true;
  int hidden = 128;
  int disc_hidden = 64;
  double init_scale = 0.05;
  RewardMode reward = RewardMode::kGail;
  double ablation_alpha = 0.5;
  int eval_every = 1;
  std::uint64_t seed = 1;

  void validate() const;
  // Stable hex digest of every field.
  std::string digest() const;
};

// log(max(d, 1e-8)).
double gail_reward(double d);

// R_t = r_t + gamma * R_{t+1} within one episode.
std::vector<double> discounted_returns(std::span<const double> rewards, double gamma);

struct Transition {
  nn::Vector state;
  int action = 0;
  double log_prob = 0.0;
  double value = 0.0;
  double reward = 0.0;
  double accuracy = 0.0;
  double lag = 0.0;
};
using Trajectory = std::vector<Transition>;

// Encoded state-action pairs.
struct PairBatch {
  nn::Matrix states;
  std::vector<int> actions;
  std::size_t size() const noexcept { return actions.size(); }
};

PairBatch expert_pairs(std::span<const Demonstration> demos, const EncoderOptions& options);

// Mean binary cross-entropy, expert pairs labelled 1 and agent pairs 0.
// Fills `grads` when non-null.
double discriminator_loss(const nn::Discriminator& disc, const PairBatch& expert,
                          const PairBatch& agent, nn::Grads* grads);

// One plain gradient step; returns the loss before the step. Throws
// InvalidArgument when either batch is empty.
double discriminator_update(nn::Discriminator& disc, const PairBatch& expert,
                            const PairBatch& agent, double lr);
// Same with an optimizer and global-norm clipping.
double discriminator_update(nn::Discriminator& disc, const PairBatch& expert,
                            const PairBatch& agent, nn::Adam& optimizer, double max_grad_norm);

struct PpoBatch {
  nn::Matrix states;
  std::vector<int> actions;
  nn::RowVector old_log_probs;
  nn::RowVector advantages;
  nn::RowVector returns;
};

struct SurrogateStats {
  double mean_ratio = 0.0;
  double clip_fraction = 0.0;
  double entropy = 0.0;
};

// -mean(min(rho A, clip(rho, 1 - eps, 1 + eps) A)) - entropy_coef * mean(H).
double ppo_policy_loss(const nn::PolicyNet& policy, const PpoBatch& batch, double clip,
                       double entropy_coef, nn::Grads* grads, SurrogateStats* stats = nullptr);

// mean((V(s) - R)^2).
double value_loss(const nn::ValueNet& value, const nn::Matrix& states, const nn::RowVector& returns,
                  nn::Grads* grads);

struct PpoStats {
  double policy_loss = 0.0;
  double value_loss = 0.0;
  double first_pass_mean_ratio = 0.0;  // 1 when the policy has not moved yet
  double entropy = 0.0;
};

struct PpoOptimizers {
  nn::Adam policy;
  nn::Adam value;
};

// Advantages are discounted returns minus the recorded value baseline.
// Runs cfg.ppo_epochs passes of shuffled minibatches.
PpoStats ppo_update(nn::PolicyNet& policy, nn::ValueNet& value,
                    std::span<const Trajectory> trajectories, const TrainConfig& cfg,
                    PpoOptimizers& optimizers, std::mt19937_64& rng);

// Policy, value function and discriminator with their encoder.
struct Agent {
  nn::Architecture arch;
  EncoderOptions encoder;
  nn::PolicyNet policy;
  nn::ValueNet value;
  nn::Discriminator disc;
  std::uint64_t seed = 0;
  int epoch = 0;
};

Agent make_agent(const EncoderOptions& encoder, int num_actions, const TrainConfig& cfg);

// Greedy (argmax, lowest id on ties) or sampled action selection.
class AgentPolicy : public Policy {
 public:
  explicit AgentPolicy(const Agent& agent, std::string name = "agent");
  AgentPolicy(const Agent& agent, std::uint64_t sample_seed, std::string name = "agent");
  void reset() override;
  int act(const StateObservation& state) override;
  std::string name() const override { return name_; }

 private:
  const Agent* agent_;
  bool greedy_;
  std::uint64_t seed_;
  std::mt19937_64 rng_;
  std::string name_;
};

int sample_action(const nn::Vector& probs, std::mt19937_64& rng);

// One sampled episode.
Trajectory rollout(const Agent& agent, Env& env, std::mt19937_64& rng);

struct EpochLog {
  int epoch = 0;
  double mean_disc_loss = 0.0;
  double mean_policy_loss = 0.0;
  double mean_reward = 0.0;
  double val_mean_accuracy = 0.0;
  double val_mean_lag = 0.0;
};

std::string format_training_log(std::span<const EpochLog> log);

struct TrainSetup {
  // Fresh env for rollout `episode`; may draw from the rng.
  std::function<Env(std::size_t episode, std::mt19937_64& rng)> make_env;
  // Greedy evaluation sessions for checkpoint selection.
  std::vector<Env> validation;
};

struct TrainResult {
  Agent best;  // highest validation score, earliest on ties
  Agent last;
  double best_score = 0.0;
  std::vector<EpochLog> log;
};

// Validation score: mean accuracy minus the mean lag beyond max_lag.
double validation_score(double mean_accuracy, double mean_lag, double max_lag);

// Alternates rollouts, a discriminator update, reward labelling and a PPO
// update for cfg.epochs epochs. Reproducible from cfg.seed.
TrainResult train(const TrainSetup& setup, std::span<const Demonstration> demos,
                  const EncoderOptions& encoder, int num_actions, const TrainConfig& cfg);

}  // namespace vastream

#endif  // VASTREAM_GAIL_HPP_
