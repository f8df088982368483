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

#ifndef SYNEVAL_MATRIX_H_
#define SYNEVAL_MATRIX_H_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace syneval {

// Dense row-major matrix of 32-bit floats. Every public constructor and
// mutating operation keeps the entries finite; non-finite input is rejected
// with a kNumericDivergence error.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, float fill = 0.0f);
  Matrix(std::size_t rows, std::size_t cols, std::vector<float> data);

  static Matrix from_rows(std::initializer_list<std::initializer_list<float>> rows);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  float operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  float& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

  std::span<const float> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<float> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  std::span<const float> values() const { return data_; }
  std::span<float> values() { return data_; }

  // Returns a new matrix holding the listed rows, in order.
  Matrix gather_rows(std::span<const std::size_t> indices) const;
  // Returns a new matrix holding columns [begin, begin + count).
  Matrix slice_cols(std::size_t begin, std::size_t count) const;
  Matrix transposed() const;

  bool all_finite() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<float> data_;
};

// [a | b] column-wise concatenation; row counts must match.
Matrix hconcat(const Matrix& a, const Matrix& b);

// Plain products, accumulated in double and rounded once.
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix matmul_transpose_a(const Matrix& a, const Matrix& b);  // aᵀ·b

}  // namespace syneval

#endif  // SYNEVAL_MATRIX_H_
