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

#include "syneval/metrics.h"

#include <algorithm>
#include <cmath>

#include "syneval/error.h"

namespace syneval {
namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    fail(ErrorCode::kShape, std::string(what) + ": shape mismatch " +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()));
  }
}

double norm2(std::span<const float> v) {
  double s = 0.0;
  for (float x : v) s += static_cast<double>(x) * x;
  return std::sqrt(s);
}

}  // namespace

LossAndGrad mse_loss_and_grad(const Matrix& pred, const Matrix& target) {
  require_same_shape(pred, target, "mse_loss_and_grad");
  LossAndGrad out{0.0, Matrix(pred.rows(), pred.cols())};
  const auto p = pred.values();
  const auto t = target.values();
  auto g = out.grad.values();
  const double n = static_cast<double>(p.size());
  if (p.empty()) return out;
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double diff = static_cast<double>(p[i]) - t[i];
    sum += diff * diff;
    g[i] = static_cast<float>(2.0 * diff / n);
  }
  out.loss = sum / n;
  return out;
}

double mse(const Matrix& pred, const Matrix& target) {
  require_same_shape(pred, target, "mse");
  const auto p = pred.values();
  const auto t = target.values();
  if (p.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double diff = static_cast<double>(p[i]) - t[i];
    sum += diff * diff;
  }
  return sum / static_cast<double>(p.size());
}

double rmse(const Matrix& pred, const Matrix& target) { return std::sqrt(mse(pred, target)); }

double rmse(std::span<const float> pred, std::span<const float> target) {
  if (pred.size() != target.size()) fail(ErrorCode::kShape, "rmse: length mismatch");
  if (pred.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double diff = static_cast<double>(pred[i]) - target[i];
    sum += diff * diff;
  }
  return std::sqrt(sum / static_cast<double>(pred.size()));
}

double cosine_similarity(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) fail(ErrorCode::kShape, "cosine_similarity: length mismatch");
  const double na = norm2(a);
  const double nb = norm2(b);
  if (na == 0.0 || nb == 0.0) {
    fail(ErrorCode::kDegenerateInput, "cosine_similarity: zero vector");
  }
  double dot = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) dot += static_cast<double>(a[i]) * b[i];
  return std::clamp(dot / (na * nb), -1.0, 1.0);
}

std::vector<float> l2_normalize(std::span<const float> v) {
  const double n = norm2(v);
  if (n == 0.0) fail(ErrorCode::kDegenerateInput, "l2_normalize: zero vector");
  std::vector<float> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = static_cast<float>(v[i] / n);
  return out;
}

Matrix l2_normalize_rows(const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto normalized = l2_normalize(m.row(r));
    std::copy(normalized.begin(), normalized.end(), out.row(r).begin());
  }
  return out;
}

}  // namespace syneval
