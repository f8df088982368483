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

#ifndef SYNEVAL_TESTS_ORACLES_LEAST_SQUARES_H_
#define SYNEVAL_TESTS_ORACLES_LEAST_SQUARES_H_

#include <Eigen/Dense>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "syneval/matrix.h"

namespace syneval::oracle {

inline Eigen::MatrixXd with_bias(const Matrix& x, std::span<const std::size_t> rows) {
  Eigen::MatrixXd a(rows.size(), x.cols() + 1);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < x.cols(); ++c) a(r, c) = x(rows[r], c);
    a(r, x.cols()) = 1.0;
  }
  return a;
}

// Ordinary least squares with intercept fitted on `train`, scored as RMSE
// (over all target columns) on `test`. y has one row per x row.
inline double least_squares_rmse(const Matrix& x, const Matrix& y,
                                 std::span<const std::size_t> train,
                                 std::span<const std::size_t> test) {
  const Eigen::MatrixXd a = with_bias(x, train);
  Eigen::MatrixXd b(train.size(), y.cols());
  for (std::size_t r = 0; r < train.size(); ++r) {
    for (std::size_t c = 0; c < y.cols(); ++c) b(r, c) = y(train[r], c);
  }
  const Eigen::MatrixXd w = a.colPivHouseholderQr().solve(b);
  const Eigen::MatrixXd pred = with_bias(x, test) * w;
  double se = 0.0;
  for (std::size_t r = 0; r < test.size(); ++r) {
    for (std::size_t c = 0; c < y.cols(); ++c) {
      const double e = pred(r, c) - y(test[r], c);
      se += e * e;
    }
  }
  return std::sqrt(se / static_cast<double>(test.size() * y.cols()));
}

inline Matrix column(std::span<const double> v) {
  Matrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = static_cast<float>(v[i]);
  return m;
}

}  // namespace syneval::oracle

#endif  // SYNEVAL_TESTS_ORACLES_LEAST_SQUARES_H_
