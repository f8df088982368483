// Copyright 2026 The syneval Authors. All Rights Reserved.
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
#include <vector>

#include "oracles/fd_gradient.h"
#include "syneval/probe.h"
#include "syneval/rng.h"
#include "syneval/trainer.h"
#include "test_util.h"

namespace syneval {
namespace {

Matrix random_matrix(std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(r, c);
  for (float& v : m.values()) v = static_cast<float>(rng.normal());
  return m;
}

TEST(ProbeTest, InitIsSeededAndBounded) {
  const ProbeSpec spec{9, {5}, 2, 77};
  const Probe a = Probe::init(spec), b = Probe::init(spec);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, Probe::init({9, {5}, 2, 78}));
  const float bound = 1.0f / 3.0f;  // 1/sqrt(fan_in)
  for (float w : a.layers()[0].weight.values()) EXPECT_LE(std::abs(w), bound);
  for (float bias : a.layers()[0].bias) EXPECT_EQ(bias, 0.0f);
  EXPECT_EQ(a.parameter_count(), 9u * 5 + 5 + 5 * 2 + 2);
}

TEST(ProbeTest, SpecValidation) {
  EXPECT_SYNEVAL_ERROR(Probe::init({0, {}, 1, 0}), kConfig);
  EXPECT_SYNEVAL_ERROR(Probe::init({3, {0}, 1, 0}), kConfig);
  const Probe p = Probe::init({3, {}, 1, 0});
  EXPECT_SYNEVAL_ERROR(p.forward(Matrix(2, 4)), kShape);
}

TEST(ProbeTest, ForwardShapesAndReluOnHiddenOnly) {
  Probe p = Probe::init({2, {3}, 1, 0});
  auto& layers = p.mutable_layers();
  layers[0].weight = Matrix::from_rows({{1, 0}, {0, 1}, {-1, -1}});
  layers[0].bias = {0, 0, 0};
  layers[1].weight = Matrix::from_rows({{1, 1, 1}});
  layers[1].bias = {-10};
  // hidden = relu(1, 2, -3) = (1, 2, 0); output = 3 - 10 (affine, no ReLU).
  const Matrix out = p.forward(Matrix::from_rows({{1, 2}}));
  ASSERT_EQ(out.rows(), 1u);
  ASSERT_EQ(out.cols(), 1u);
  EXPECT_FLOAT_EQ(out(0, 0), -7.0f);
}

TEST(ProbeTest, SlpWeightGradientIsClosedForm) {
  Rng rng(2);
  const Probe p = Probe::init({5, {}, 3, 1});
  const Matrix x = random_matrix(7, 5, rng), g = random_matrix(7, 3, rng);
  const auto grads = p.backward(x, g);
  const Matrix expected = matmul_transpose_a(g, x);  // gᵀ·x
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      EXPECT_NEAR(grads.layers[0].weight(i, j), expected(i, j), 1e-5);
    }
    double bias = 0.0;
    for (std::size_t r = 0; r < 7; ++r) bias += g(r, i);
    EXPECT_NEAR(grads.layers[0].bias[i], bias, 1e-5);
  }
}

TEST(ProbeTest, FiniteDifferencesOnSmallMlp) {
  Rng rng(3);
  const Probe p = Probe::init({4, {8}, 2, 5});
  const Matrix x = random_matrix(6, 4, rng), g = random_matrix(6, 2, rng);
  const double err = oracle::max_relative_error(p.backward(x, g).flat(), oracle::fd_gradient(p, x, g));
  EXPECT_LE(err, 1e-4);
}

TEST(ProbeTest, InputGradientMatchesFiniteDifferences) {
  Rng rng(4);
  const Probe p = Probe::init({3, {6, 4}, 2, 9});
  Matrix x = random_matrix(2, 3, rng);
  const Matrix g = random_matrix(2, 2, rng);
  Matrix input_grad;
  p.backward(x, g, &input_grad);
  ASSERT_EQ(input_grad.rows(), 2u);
  ASSERT_EQ(input_grad.cols(), 3u);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const float original = x.values()[i];
    x.values()[i] = original + 1e-3f;
    const double up = oracle::weighted_output(p, x, g);
    x.values()[i] = original - 1e-3f;
    const double down = oracle::weighted_output(p, x, g);
    x.values()[i] = original;
    const double fd = (up - down) / (static_cast<double>(original + 1e-3f) - (original - 1e-3f));
    EXPECT_NEAR(input_grad.values()[i], fd, 1e-4 * std::max(1.0, std::abs(fd)));
  }
}

TEST(ProbeTest, MseStepGradientsMatchFiniteDifferences) {
  Rng rng(6);
  const Probe p = Probe::init({3, {5}, 2, 2});
  const Matrix x = random_matrix(4, 3, rng), y = random_matrix(4, 2, rng);
  const ModelStep step = mse_step(p, x, y);
  Probe work = p;
  auto params = work.parameters();
  for (std::size_t t = 0; t < params.size(); ++t) {
    for (std::size_t i = 0; i < params[t].size(); ++i) {
      const float original = params[t][i];
      params[t][i] = original + 1e-3f;
      const double up = mse(work.forward(x), y);
      params[t][i] = original - 1e-3f;
      const double down = mse(work.forward(x), y);
      params[t][i] = original;
      const double fd = (up - down) / 2e-3;
      EXPECT_NEAR(step.grads[t][i], fd, 2e-3 * std::max(1.0, std::abs(fd)));
    }
  }
}

}  // namespace
}  // namespace syneval
