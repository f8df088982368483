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

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "syneval/matrix.h"
#include "syneval/metrics.h"
#include "syneval/rng.h"
#include "test_util.h"

namespace syneval {
namespace {

Matrix random_matrix(std::size_t r, std::size_t c, Rng& rng) {
  Matrix m(r, c);
  for (float& v : m.values()) v = static_cast<float>(rng.normal());
  return m;
}

Eigen::MatrixXd to_eigen(const Matrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  }
  return e;
}

TEST(MatrixTest, MatmulMatchesEigen) {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng.below(20), k = 1 + rng.below(20), m = 1 + rng.below(20);
    const Matrix a = random_matrix(n, k, rng), b = random_matrix(k, m, rng);
    const Eigen::MatrixXd expected = to_eigen(a) * to_eigen(b);
    const Matrix got = matmul(a, b);
    const Matrix at = random_matrix(k, n, rng);
    const Eigen::MatrixXd expected_ta = to_eigen(at).transpose() * to_eigen(b);
    const Matrix got_ta = matmul_transpose_a(at, b);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        EXPECT_NEAR(got(i, j), expected(i, j), 1e-5 * (1 + std::abs(expected(i, j))));
        EXPECT_NEAR(got_ta(i, j), expected_ta(i, j), 1e-5 * (1 + std::abs(expected_ta(i, j))));
      }
    }
  }
}

TEST(MatrixTest, ShapeErrors) {
  EXPECT_SYNEVAL_ERROR(matmul(Matrix(2, 3), Matrix(2, 3)), kShape);
  EXPECT_SYNEVAL_ERROR(hconcat(Matrix(2, 3), Matrix(3, 3)), kShape);
  EXPECT_SYNEVAL_ERROR(Matrix(2, 2, std::vector<float>(3)), kShape);
  EXPECT_SYNEVAL_ERROR(Matrix(2, 2).gather_rows(std::vector<std::size_t>{2}), kShape);
  EXPECT_SYNEVAL_ERROR(Matrix(2, 2).slice_cols(1, 2), kShape);
}

TEST(MatrixTest, RejectsNonFinite) {
  EXPECT_SYNEVAL_ERROR(Matrix(1, 1, std::numeric_limits<float>::quiet_NaN()), kNumericDivergence);
  EXPECT_SYNEVAL_ERROR(Matrix(1, 2, {1.0f, std::numeric_limits<float>::infinity()}),
                       kNumericDivergence);
}

TEST(MatrixTest, GatherSliceTransposeConcat) {
  const Matrix m = Matrix::from_rows({{1, 2, 3}, {4, 5, 6}});
  EXPECT_EQ(m.gather_rows(std::vector<std::size_t>{1, 0, 1}),
            Matrix::from_rows({{4, 5, 6}, {1, 2, 3}, {4, 5, 6}}));
  EXPECT_EQ(m.slice_cols(1, 2), Matrix::from_rows({{2, 3}, {5, 6}}));
  EXPECT_EQ(m.transposed(), Matrix::from_rows({{1, 4}, {2, 5}, {3, 6}}));
  EXPECT_EQ(hconcat(m, Matrix::from_rows({{7}, {8}})), Matrix::from_rows({{1, 2, 3, 7}, {4, 5, 6, 8}}));
  EXPECT_EQ(matmul(m, Matrix::identity(3)), m);
}

TEST(MetricsTest, MseGradientMatchesDefinition) {
  const Matrix pred = Matrix::from_rows({{1, 2}, {3, 4}});
  const Matrix target = Matrix::from_rows({{0, 2}, {5, 4}});
  const auto lg = mse_loss_and_grad(pred, target);
  EXPECT_DOUBLE_EQ(lg.loss, (1.0 + 0.0 + 4.0 + 0.0) / 4.0);
  EXPECT_FLOAT_EQ(lg.grad(0, 0), 2.0f * 1.0f / 4.0f);
  EXPECT_FLOAT_EQ(lg.grad(1, 0), 2.0f * -2.0f / 4.0f);
  EXPECT_DOUBLE_EQ(rmse(pred, target), std::sqrt(1.25));
  EXPECT_SYNEVAL_ERROR(mse(pred, Matrix(2, 3)), kShape);
}

TEST(MetricsTest, CosineBasics) {
  const std::vector<float> a = {1, 0, 0}, b = {0, 2, 0}, c = {-3, 0, 0};
  EXPECT_DOUBLE_EQ(cosine_similarity(a, a), 1.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(a, b), 0.0);
  EXPECT_DOUBLE_EQ(cosine_similarity(a, c), -1.0);
  EXPECT_SYNEVAL_ERROR(cosine_similarity(a, std::vector<float>{0, 0, 0}), kDegenerateInput);
  EXPECT_SYNEVAL_ERROR(l2_normalize(std::vector<float>{0, 0}), kDegenerateInput);
}

TEST(MetricsTest, NormalizeGivesUnitNormProperty) {
  Rng rng(5);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<float> v(1 + rng.below(64));
    const double scale = std::pow(10.0, rng.uniform(-10, 10));
    for (float& x : v) x = static_cast<float>(rng.normal() * scale);
    const auto u = l2_normalize(v);
    double n = 0.0;
    for (float x : u) n += static_cast<double>(x) * x;
    EXPECT_NEAR(std::sqrt(n), 1.0, 1e-6);
    const double cos = cosine_similarity(u, v);
    EXPECT_GE(cos, 1.0 - 1e-6);
    EXPECT_LE(cos, 1.0 + 1e-12);
  }
}

}  // namespace
}  // namespace syneval
