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

#ifndef SYNEVAL_PROBE_H_
#define SYNEVAL_PROBE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "syneval/matrix.h"

namespace syneval {

// Layer widths of a shallow probe. An empty hidden_dims list is a
// single-layer perceptron; otherwise hidden layers use ReLU and the output
// layer is affine.
struct ProbeSpec {
  std::size_t input_dim = 0;
  std::vector<std::size_t> hidden_dims;
  std::size_t output_dim = 0;
  std::uint64_t seed = 0;

  void validate() const;
  friend bool operator==(const ProbeSpec&, const ProbeSpec&) = default;
};

// weight is (out x in), matching the usual dense-layer convention.
struct DenseLayer {
  Matrix weight;
  std::vector<float> bias;

  friend bool operator==(const DenseLayer&, const DenseLayer&) = default;
};

// Flat per-tensor gradients in parameter order (W0, b0, W1, b1, ...).
using GradientSet = std::vector<std::vector<float>>;

struct ProbeGradients {
  std::vector<DenseLayer> layers;

  GradientSet flat() const;
};

// Double-precision activations of one forward pass. activations[0] is the
// input; activations[l + 1] is the output of layer l (post-ReLU for hidden
// layers).
struct ForwardTrace {
  std::size_t rows = 0;
  std::vector<std::size_t> widths;
  std::vector<std::vector<double>> activations;

  Matrix output() const;
};

class Probe {
 public:
  // Weights uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)] from a generator
  // seeded with spec.seed; biases zero.
  static Probe init(const ProbeSpec& spec);

  Probe(ProbeSpec spec, std::vector<DenseLayer> layers);

  const ProbeSpec& spec() const { return spec_; }
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& mutable_layers() { return layers_; }

  Matrix forward(const Matrix& batch) const;
  ForwardTrace trace(const Matrix& batch) const;

  // Gradients of sum(output_grad ⊙ forward(batch)) with respect to every
  // parameter. When input_grad is non-null it receives the gradient with
  // respect to the batch.
  ProbeGradients backward(const Matrix& batch, const Matrix& output_grad,
                          Matrix* input_grad = nullptr) const;
  ProbeGradients backward(const ForwardTrace& trace, const Matrix& output_grad,
                          Matrix* input_grad = nullptr) const;

  std::vector<std::span<float>> parameters();
  std::size_t parameter_count() const;

  friend bool operator==(const Probe&, const Probe&) = default;

 private:
  ProbeSpec spec_;
  std::vector<DenseLayer> layers_;
};

}  // namespace syneval

#endif  // SYNEVAL_PROBE_H_
