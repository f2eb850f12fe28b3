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

#include "vastream/nn.hpp"

#include <cmath>

#include "vastream/error.hpp"

namespace vastream::nn {

namespace {

Matrix uniform(int rows, int cols, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  Matrix m(rows, cols);
  // column-major fill order keeps initialization reproducible
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = dist(rng);
  }
  return m;
}

void check_input(const Matrix& x, const Matrix& w1) {
  if (x.rows() != w1.cols()) {
    throw InvalidArgument("input width " + std::to_string(x.rows()) + " does not match network (" +
                          std::to_string(w1.cols()) + ")");
  }
}

Matrix tanh_grad(const Matrix& h, const Matrix& d_h) {
  return d_h.cwiseProduct((1.0 - h.array().square()).matrix());
}

}  // namespace

Trunk::Trunk(const Architecture& arch, std::mt19937_64& rng, double init_scale)
    : shortcut_index(arch.shortcut_index) {
  if (arch.input_dim <= 0 || arch.hidden <= 0) throw InvalidArgument("bad architecture");
  if (shortcut_index >= arch.input_dim) throw InvalidArgument("shortcut index outside the input");
  const int z_dim = arch.hidden + (shortcut_index >= 0 ? 1 : 0);
  w1 = uniform(arch.hidden, arch.input_dim, rng, init_scale);
  b1 = uniform(arch.hidden, 1, rng, init_scale);
  w2 = uniform(arch.hidden, z_dim, rng, init_scale);
  b2 = uniform(arch.hidden, 1, rng, init_scale);
}

const Matrix& Trunk::forward(const Matrix& x, Cache& cache) const {
  check_input(x, w1);
  cache.x = x;
  cache.h1 = ((w1 * x).colwise() + b1.col(0)).array().tanh().matrix();
  if (shortcut_index >= 0) {
    cache.z.resize(cache.h1.rows() + 1, x.cols());
    cache.z.topRows(cache.h1.rows()) = cache.h1;
    cache.z.bottomRows(1) = x.row(shortcut_index);
  } else {
    cache.z = cache.h1;
  }
  cache.h2 = ((w2 * cache.z).colwise() + b2.col(0)).array().tanh().matrix();
  return cache.h2;
}

void Trunk::backward(const Cache& cache, const Matrix& d_h2, Grads& g, std::size_t offset) const {
  const Matrix d_a2 = tanh_grad(cache.h2, d_h2);
  g[offset + 2] += d_a2 * cache.z.transpose();
  g[offset + 3] += d_a2.rowwise().sum();
  const Matrix d_z = w2.transpose() * d_a2;
  const Matrix d_a1 = tanh_grad(cache.h1, d_z.topRows(cache.h1.rows()));
  g[offset + 0] += d_a1 * cache.x.transpose();
  g[offset + 1] += d_a1.rowwise().sum();
}

// ---- policy ----

PolicyNet::PolicyNet(const Architecture& arch, std::mt19937_64& rng, double init_scale)
    : trunk(arch, rng, init_scale) {
  if (arch.num_actions <= 0) throw InvalidArgument("policy needs at least one action");
  w3 = Matrix::Zero(arch.num_actions, arch.hidden);
  b3 = Matrix::Zero(arch.num_actions, 1);
}

Matrix softmax(const Matrix& logits) {
  Matrix out(logits.rows(), logits.cols());
  for (Eigen::Index j = 0; j < logits.cols(); ++j) {
    const double mx = logits.col(j).maxCoeff();
    const auto e = (logits.col(j).array() - mx).exp();
    out.col(j) = (e / e.sum()).matrix();
  }
  return out;
}

const Matrix& PolicyNet::forward(const Matrix& x, Cache& cache) const {
  const Matrix& h2 = trunk.forward(x, cache.trunk);
  cache.logits = (w3 * h2).colwise() + b3.col(0);
  cache.probs = softmax(cache.logits);
  return cache.probs;
}

Matrix PolicyNet::probabilities(const Matrix& x) const {
  Cache cache;
  return forward(x, cache);
}

Vector PolicyNet::probabilities(const Vector& x) const {
  return probabilities(Matrix(x)).col(0);
}

Grads PolicyNet::backward(const Cache& cache, const Matrix& d_logits) const {
  Grads g = zero_grads();
  g[4] = d_logits * cache.trunk.h2.transpose();
  g[5] = d_logits.rowwise().sum();
  trunk.backward(cache.trunk, w3.transpose() * d_logits, g, 0);
  return g;
}

std::vector<Matrix*> PolicyNet::params() {
  return {&trunk.w1, &trunk.b1, &trunk.w2, &trunk.b2, &w3, &b3};
}
std::vector<const Matrix*> PolicyNet::params() const {
  return {&trunk.w1, &trunk.b1, &trunk.w2, &trunk.b2, &w3, &b3};
}

Grads PolicyNet::zero_grads() const {
  Grads g;
  for (const Matrix* p : params()) g.push_back(Matrix::Zero(p->rows(), p->cols()));
  return g;
}

// ---- value ----

ValueNet::ValueNet(const Architecture& arch, std::mt19937_64& rng, double init_scale)
    : trunk(arch, rng, init_scale) {
  w3 = uniform(1, arch.hidden, rng, init_scale);
  b3 = Matrix::Zero(1, 1);
}

const Matrix& ValueNet::forward(const Matrix& x, Cache& cache) const {
  const Matrix& h2 = trunk.forward(x, cache.trunk);
  cache.values = (w3 * h2).array() + b3(0, 0);
  return cache.values;
}

RowVector ValueNet::values(const Matrix& x) const {
  Cache cache;
  return forward(x, cache).row(0);
}

double ValueNet::value(const Vector& x) const { return values(Matrix(x))(0); }

Grads ValueNet::backward(const Cache& cache, const Matrix& d_values) const {
  Grads g = zero_grads();
  g[4] = d_values * cache.trunk.h2.transpose();
  g[5] = d_values.rowwise().sum();
  trunk.backward(cache.trunk, w3.transpose() * d_values, g, 0);
  return g;
}

std::vector<Matrix*> ValueNet::params() {
  return {&trunk.w1, &trunk.b1, &trunk.w2, &trunk.b2, &w3, &b3};
}
std::vector<const Matrix*> ValueNet::params() const {
  return {&trunk.w1, &trunk.b1, &trunk.w2, &trunk.b2, &w3, &b3};
}

Grads ValueNet::zero_grads() const {
  Grads g;
  for (const Matrix* p : params()) g.push_back(Matrix::Zero(p->rows(), p->cols()));
  return g;
}

// ---- discriminator ----

Discriminator::Discriminator(const Architecture& arch, std::mt19937_64& rng, double init_scale)
    : trunk(arch, rng, init_scale), num_actions_(arch.num_actions) {
  if (arch.num_actions <= 0 || arch.disc_hidden <= 0) throw InvalidArgument("bad architecture");
  wa = uniform(arch.disc_hidden, arch.hidden + arch.num_actions, rng, init_scale);
  ba = uniform(arch.disc_hidden, 1, rng, init_scale);
  wo = uniform(1, arch.disc_hidden, rng, init_scale);
  bo = Matrix::Zero(1, 1);
}

Matrix one_hot(std::span<const int> actions, int num_actions) {
  Matrix m = Matrix::Zero(num_actions, static_cast<Eigen::Index>(actions.size()));
  for (std::size_t j = 0; j < actions.size(); ++j) {
    if (actions[j] < 0 || actions[j] >= num_actions) throw InvalidArgument("action out of range");
    m(actions[j], static_cast<Eigen::Index>(j)) = 1.0;
  }
  return m;
}

const Matrix& Discriminator::forward(const Matrix& x, std::span<const int> actions,
                                     Cache& cache) const {
  if (static_cast<Eigen::Index>(actions.size()) != x.cols()) {
    throw InvalidArgument("one action per state expected");
  }
  const Matrix& h2 = trunk.forward(x, cache.trunk);
  cache.za.resize(h2.rows() + num_actions_, h2.cols());
  cache.za.topRows(h2.rows()) = h2;
  cache.za.bottomRows(num_actions_) = one_hot(actions, num_actions_);
  cache.h3 = ((wa * cache.za).colwise() + ba.col(0)).array().tanh().matrix();
  cache.logits = (wo * cache.h3).array() + bo(0, 0);
  return cache.logits;
}

RowVector Discriminator::logits(const Matrix& x, std::span<const int> actions) const {
  Cache cache;
  return forward(x, actions, cache).row(0);
}

RowVector Discriminator::probabilities(const Matrix& x, std::span<const int> actions) const {
  RowVector z = logits(x, actions);
  for (Eigen::Index j = 0; j < z.size(); ++j) z(j) = sigmoid(z(j));
  return z;
}

double Discriminator::probability(const Vector& x, int action) const {
  const int a[] = {action};
  return probabilities(Matrix(x), a)(0);
}

Grads Discriminator::backward(const Cache& cache, const Matrix& d_logits) const {
  Grads g = zero_grads();
  g[6] += d_logits * cache.h3.transpose();
  g[7] += d_logits.rowwise().sum();
  const Matrix d_a3 = tanh_grad(cache.h3, wo.transpose() * d_logits);
  g[4] += d_a3 * cache.za.transpose();
  g[5] += d_a3.rowwise().sum();
  const Matrix d_za = wa.transpose() * d_a3;
  trunk.backward(cache.trunk, d_za.topRows(cache.trunk.h2.rows()), g, 0);
  return g;
}

std::vector<Matrix*> Discriminator::params() {
  return {&trunk.w1, &trunk.b1, &trunk.w2, &trunk.b2, &wa, &ba, &wo, &bo};
}
std::vector<const Matrix*> Discriminator::params() const {
  return {&trunk.w1, &trunk.b1, &trunk.w2, &trunk.b2, &wa, &ba, &wo, &bo};
}

Grads Discriminator::zero_grads() const {
  Grads g;
  for (const Matrix* p : params()) g.push_back(Matrix::Zero(p->rows(), p->cols()));
  return g;
}

// ---- helpers ----

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double softplus(double z) { return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double global_norm(const Grads& g) {
  double s = 0.0;
  for (const auto& m : g) s += m.squaredNorm();
  return std::sqrt(s);
}

double clip_global_norm(Grads& g, double max_norm) {
  const double norm = global_norm(g);
  if (norm > max_norm && norm > 0.0) {
    const double scale = max_norm / norm;
    for (auto& m : g) m *= scale;
  }
  return norm;
}

void sgd_step(const std::vector<Matrix*>& params, const Grads& g, double lr) {
  if (params.size() != g.size()) throw InvalidArgument("gradient list does not match parameters");
  for (std::size_t i = 0; i < params.size(); ++i) *params[i] -= lr * g[i];
}

void Adam::step(const std::vector<Matrix*>& params, const Grads& g) {
  if (params.size() != g.size()) throw InvalidArgument("gradient list does not match parameters");
  if (m_.empty()) {
    for (const Matrix* p : params) {
      m_.push_back(Matrix::Zero(p->rows(), p->cols()));
      v_.push_back(Matrix::Zero(p->rows(), p->cols()));
    }
  }
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * g[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * g[i].cwiseProduct(g[i]);
    *params[i] -= (lr_ * (m_[i] / c1).array() / ((v_[i] / c2).array().sqrt() + eps_)).matrix();
  }
}

}  // namespace vastream::nn
