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

#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>

#include "vastream/nn.hpp"

namespace vastream::nn {
namespace {

constexpr double kStep = 1e-6;

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Matrix m(rows, cols);
  for (Eigen::Index k = 0; k < m.size(); ++k) m.data()[k] = u(rng);
  return m;
}

double rel_error(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-6});
}

// Worst relative error between analytic grads and central differences of `loss`.
double worst_error(const std::vector<Matrix*>& params, const Grads& analytic,
                   const std::function<double()>& loss) {
  double worst = 0.0;
  for (std::size_t p = 0; p < params.size(); ++p) {
    Matrix& m = *params[p];
    for (Eigen::Index k = 0; k < m.size(); ++k) {
      const double keep = m.data()[k];
      m.data()[k] = keep + kStep;
      const double up = loss();
      m.data()[k] = keep - kStep;
      const double down = loss();
      m.data()[k] = keep;
      const double numeric = (up - down) / (2.0 * kStep);
      worst = std::max(worst, rel_error(analytic[p].data()[k], numeric));
    }
  }
  return worst;
}

Architecture small_arch(int shortcut) { return Architecture{5, 6, 3, 4, shortcut}; }

class GradientCheck : public ::testing::TestWithParam<int> {};

TEST_P(GradientCheck, Policy) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()));
  PolicyNet net(small_arch(GetParam() % 2 == 0 ? 4 : -1), rng, 0.5);
  net.w3 = random_matrix(rng, net.w3.rows(), net.w3.cols());
  const Matrix x = random_matrix(rng, 5, 7);
  const Matrix r = random_matrix(rng, 3, 7);
  // L = sum_a r_a log p_a exercises the softmax on top of the logits
  const auto loss = [&] {
    PolicyNet::Cache c;
    return (r.array() * net.forward(x, c).array().log()).sum();
  };
  PolicyNet::Cache cache;
  const Matrix& p = net.forward(x, cache);
  Matrix d_logits = r;
  for (Eigen::Index j = 0; j < p.cols(); ++j) d_logits.col(j) -= p.col(j) * r.col(j).sum();
  EXPECT_LT(worst_error(net.params(), net.backward(cache, d_logits), loss), 1e-3);
}

TEST_P(GradientCheck, Value) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()) + 100);
  ValueNet net(small_arch(1), rng, 0.5);
  net.w3 = random_matrix(rng, net.w3.rows(), net.w3.cols());
  const Matrix x = random_matrix(rng, 5, 6);
  const RowVector target = random_matrix(rng, 1, 6);
  const auto loss = [&] { return (net.values(x) - target).squaredNorm(); };
  ValueNet::Cache cache;
  const Matrix d = 2.0 * (net.forward(x, cache) - target);
  EXPECT_LT(worst_error(net.params(), net.backward(cache, d), loss), 1e-3);
}

TEST_P(GradientCheck, Discriminator) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(GetParam()) + 200);
  Discriminator net(small_arch(GetParam() % 3 == 0 ? 0 : -1), rng, 0.5);
  net.wo = random_matrix(rng, net.wo.rows(), net.wo.cols());
  const Matrix x = random_matrix(rng, 5, 8);
  std::uniform_int_distribution<int> pick(0, 2);
  std::vector<int> actions(8);
  for (auto& a : actions) a = pick(rng);
  const RowVector label = (random_matrix(rng, 1, 8).array() > 0.0).cast<double>();
  // binary cross-entropy on the sigmoid output
  const auto loss = [&] {
    const RowVector z = net.logits(x, actions);
    double s = 0.0;
    for (Eigen::Index j = 0; j < z.size(); ++j) s += softplus(z(j)) - label(j) * z(j);
    return s;
  };
  Discriminator::Cache cache;
  const Matrix& z = net.forward(x, actions, cache);
  Matrix d(1, z.cols());
  for (Eigen::Index j = 0; j < z.cols(); ++j) d(0, j) = sigmoid(z(0, j)) - label(j);
  EXPECT_LT(worst_error(net.params(), net.backward(cache, d), loss), 1e-3);
}

INSTANTIATE_TEST_SUITE_P(Seeds, GradientCheck, ::testing::Range(1, 21));

TEST(Nn, SoftmaxNormalizesExtremeLogits) {
  Matrix z(3, 3);
  z << 1000.0, -1000.0, 0.0,
       999.0, -1000.0, 0.0,
       -5.0, 800.0, 0.0;
  const Matrix p = softmax(z);
  for (Eigen::Index j = 0; j < 3; ++j) {
    EXPECT_NEAR(p.col(j).sum(), 1.0, 1e-12);
    EXPECT_TRUE(p.col(j).allFinite());
  }
  EXPECT_NEAR(p(0, 0) / p(1, 0), std::exp(1.0), 1e-9);
  EXPECT_NEAR(p(0, 2), 1.0 / 3.0, 1e-12);
}

TEST(Nn, SigmoidAndSoftplus) {
  EXPECT_DOUBLE_EQ(sigmoid(0.0), 0.5);
  EXPECT_GE(sigmoid(-800.0), 0.0);
  EXPECT_LE(sigmoid(800.0), 1.0);
  EXPECT_DOUBLE_EQ(softplus(800.0), 800.0);
  EXPECT_NEAR(softplus(0.0), std::log(2.0), 1e-15);
  EXPECT_NEAR(softplus(-50.0), std::exp(-50.0), 1e-30);
}

TEST(Nn, InitialPolicyIsUniform) {
  std::mt19937_64 rng(9);
  PolicyNet net(small_arch(-1), rng);
  const Vector x = Vector::Random(5);
  const Vector p = net.probabilities(x);
  for (Eigen::Index a = 0; a < 3; ++a) EXPECT_NEAR(p(a), 1.0 / 3.0, 1e-15);
}

TEST(Nn, ClipGlobalNorm) {
  Grads g = {Matrix::Constant(1, 1, 3.0), Matrix::Constant(1, 1, 4.0)};
  EXPECT_DOUBLE_EQ(global_norm(g), 5.0);
  EXPECT_DOUBLE_EQ(clip_global_norm(g, 1.0), 5.0);
  EXPECT_NEAR(g[0](0, 0), 0.6, 1e-15);
  EXPECT_NEAR(global_norm(g), 1.0, 1e-15);
  EXPECT_DOUBLE_EQ(clip_global_norm(g, 2.0), global_norm(g));
  EXPECT_NEAR(g[1](0, 0), 0.8, 1e-15);
}

TEST(Nn, AdamFirstStepMovesByLr) {
  Matrix w = Matrix::Constant(2, 1, 1.0);
  Adam adam(0.1);
  Grads g = {(Matrix(2, 1) << 3.0, -0.5).finished()};
  adam.step({&w}, g);
  // bias-corrected first step is lr * sign(g)
  EXPECT_NEAR(w(0), 0.9, 1e-6);
  EXPECT_NEAR(w(1), 1.1, 1e-6);
  sgd_step({&w}, g, 0.1);
  EXPECT_NEAR(w(0), 0.6, 1e-6);
}

TEST(Nn, OneHot) {
  const std::vector<int> a = {2, 0};
  const Matrix m = one_hot(a, 3);
  EXPECT_EQ(m.rows(), 3);
  EXPECT_EQ(m(2, 0), 1.0);
  EXPECT_EQ(m(0, 1), 1.0);
  EXPECT_EQ(m.sum(), 2.0);
}

}  // namespace
}  // namespace vastream::nn
