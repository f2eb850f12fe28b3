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

#ifndef VASTREAM_NN_HPP_
#define VASTREAM_NN_HPP_

// Small dense networks with hand-written backpropagation. Batches are
// column-major: one sample per column.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vastream::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowVector = Eigen::RowVectorXd;

// Gradients in the same order as the owning network's params().
using Grads = std::vector<Matrix>;

struct Architecture {
  int input_dim = 0;
  int hidden = 128;
  int num_actions = 0;
  int disc_hidden = 64;
  // Row of the input appended to the first hidden layer's output before the
  // second layer; -1 disables the shortcut.
  int shortcut_index = -1;

  friend bool operator==(const Architecture&, const Architecture&) = default;
};

// x -> h1 = tanh(W1 x + b1) -> z = [h1; x[shortcut]] -> h2 = tanh(W2 z + b2)
class Trunk {
 public:
  Trunk() = default;
  Trunk(const Architecture& arch, std::mt19937_64& rng, double init_scale);

  struct Cache {
    Matrix x, h1, z, h2;
  };
  const Matrix& forward(const Matrix& x, Cache& cache) const;
  // Accumulates parameter gradients into g[offset .. offset + 4).
  void backward(const Cache& cache, const Matrix& d_h2, Grads& g, std::size_t offset) const;

  int output_dim() const noexcept { return static_cast<int>(b2.rows()); }

  Matrix w1, b1, w2, b2;
  int shortcut_index = -1;
};

class PolicyNet {
 public:
  PolicyNet() = default;
  // Trunk weights uniform in [-init_scale, init_scale]; output layer zero, so
  // the initial policy is uniform.
  PolicyNet(const Architecture& arch, std::mt19937_64& rng, double init_scale = 0.05);

  struct Cache {
    Trunk::Cache trunk;
    Matrix logits, probs;
  };
  // Action probabilities, num_actions x batch.
  Matrix probabilities(const Matrix& x) const;
  Vector probabilities(const Vector& x) const;
  const Matrix& forward(const Matrix& x, Cache& cache) const;  // returns probs
  Grads backward(const Cache& cache, const Matrix& d_logits) const;

  std::vector<Matrix*> params();
  std::vector<const Matrix*> params() const;
  Grads zero_grads() const;
  int num_actions() const noexcept { return static_cast<int>(b3.rows()); }

  Trunk trunk;
  Matrix w3, b3;
};

class ValueNet {
 public:
  ValueNet() = default;
  ValueNet(const Architecture& arch, std::mt19937_64& rng, double init_scale = 0.05);

  struct Cache {
    Trunk::Cache trunk;
    Matrix values;
  };
  RowVector values(const Matrix& x) const;
  double value(const Vector& x) const;
  const Matrix& forward(const Matrix& x, Cache& cache) const;
  Grads backward(const Cache& cache, const Matrix& d_values) const;

  std::vector<Matrix*> params();
  std::vector<const Matrix*> params() const;
  Grads zero_grads() const;

  Trunk trunk;
  Matrix w3, b3;
};

// D(s, a) = sigmoid(wo . tanh(Wa [h2(s); onehot(a)] + ba) + bo).
class Discriminator {
 public:
  Discriminator() = default;
  Discriminator(const Architecture& arch, std::mt19937_64& rng, double init_scale = 0.05);

  struct Cache {
    Trunk::Cache trunk;
    Matrix za, h3, logits;
  };
  RowVector logits(const Matrix& x, std::span<const int> actions) const;
  RowVector probabilities(const Matrix& x, std::span<const int> actions) const;
  double probability(const Vector& x, int action) const;
  const Matrix& forward(const Matrix& x, std::span<const int> actions, Cache& cache) const;
  Grads backward(const Cache& cache, const Matrix& d_logits) const;

  std::vector<Matrix*> params();
  std::vector<const Matrix*> params() const;
  Grads zero_grads() const;
  int num_actions() const noexcept { return num_actions_; }

  Trunk trunk;
  Matrix wa, ba, wo, bo;

 private:
  int num_actions_ = 0;
};

// Column-wise softmax.
Matrix softmax(const Matrix& logits);
double sigmoid(double z);
// log(1 + exp(z)) without overflow.
double softplus(double z);

double global_norm(const Grads& g);
// Scales g so that its global norm is at most max_norm; returns the norm
// before clipping.
double clip_global_norm(Grads& g, double max_norm);

void sgd_step(const std::vector<Matrix*>& params, const Grads& g, double lr);

class Adam {
 public:
  explicit Adam(double lr = 1e-4, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8)
      : lr_(lr), beta1_(beta1), beta2_(beta2), eps_(eps) {}
  void step(const std::vector<Matrix*>& params, const Grads& g);
  double lr() const noexcept { return lr_; }

 private:
  double lr_, beta1_, beta2_, eps_;
  std::int64_t t_ = 0;
  std::vector<Matrix> m_, v_;
};

// One-hot columns for a batch of actions.
Matrix one_hot(std::span<const int> actions, int num_actions);

}  // namespace vastream::nn

#endif  // VASTREAM_NN_HPP_
