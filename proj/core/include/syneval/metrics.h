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

#ifndef SYNEVAL_METRICS_H_
#define SYNEVAL_METRICS_H_

#include <span>
#include <vector>

#include "syneval/matrix.h"

namespace syneval {

struct LossAndGrad {
  double loss = 0.0;
  Matrix grad;
};

// Mean over all elements of (pred - target)^2, with gradient
// 2 (pred - target) / element_count.
LossAndGrad mse_loss_and_grad(const Matrix& pred, const Matrix& target);
double mse(const Matrix& pred, const Matrix& target);
double rmse(const Matrix& pred, const Matrix& target);
double rmse(std::span<const float> pred, std::span<const float> target);

// Both throw kDegenerateInput on zero vectors.
double cosine_similarity(std::span<const float> a, std::span<const float> b);
std::vector<float> l2_normalize(std::span<const float> v);
// Row-wise normalization of every row.
Matrix l2_normalize_rows(const Matrix& m);

}  // namespace syneval

#endif  // SYNEVAL_METRICS_H_
