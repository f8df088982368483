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

#include "syneval/probe.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "syneval/error.h"
#include "syneval/rng.h"

namespace syneval {
namespace {

std::vector<std::size_t> layer_widths(const ProbeSpec& spec) {
  std::vector<std::size_t> widths;
  widths.reserve(spec.hidden_dims.size() + 2);
  widths.push_back(spec.input_dim);
  widths.insert(widths.end(), spec.hidden_dims.begin(), spec.hidden_dims.end());
  widths.push_back(spec.output_dim);
  return widths;
}

std::string shape_string(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

void ProbeSpec::validate() const {
  if (input_dim == 0 || output_dim == 0) {
    fail(ErrorCode::kConfig, "probe spec: input and output dims must be >= 1");
  }
  for (std::size_t h : hidden_dims) {
    if (h == 0) fail(ErrorCode::kConfig, "probe spec: hidden dims must be >= 1");
  }
}

GradientSet ProbeGradients::flat() const {
  GradientSet out;
  out.reserve(layers.size() * 2);
  for (const auto& layer : layers) {
    out.emplace_back(layer.weight.values().begin(), layer.weight.values().end());
    out.push_back(layer.bias);
  }
  return out;
}

Matrix ForwardTrace::output() const {
  const auto& last = activations.back();
  std::vector<float> data(last.begin(), last.end());
  return Matrix(rows, widths.back(), std::move(data));
}

Probe Probe::init(const ProbeSpec& spec) {
  spec.validate();
  const auto widths = layer_widths(spec);
  Rng rng(spec.seed);
  std::vector<DenseLayer> layers;
  for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
    const std::size_t fan_in = widths[l];
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    Matrix w(widths[l + 1], fan_in);
    for (float& v : w.values()) v = static_cast<float>(rng.uniform(-bound, bound));
    layers.push_back({std::move(w), std::vector<float>(widths[l + 1], 0.0f)});
  }
  return Probe(spec, std::move(layers));
}

Probe::Probe(ProbeSpec spec, std::vector<DenseLayer> layers)
    : spec_(std::move(spec)), layers_(std::move(layers)) {
  spec_.validate();
  const auto widths = layer_widths(spec_);
  if (layers_.size() + 1 != widths.size()) {
    fail(ErrorCode::kShape, "probe: layer count does not match spec");
  }
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& layer = layers_[l];
    if (layer.weight.rows() != widths[l + 1] || layer.weight.cols() != widths[l] ||
        layer.bias.size() != widths[l + 1]) {
      fail(ErrorCode::kShape, "probe: layer " + std::to_string(l) + " has shape " +
                                  shape_string(layer.weight.rows(), layer.weight.cols()) +
                                  ", expected " + shape_string(widths[l + 1], widths[l]));
    }
  }
}

ForwardTrace Probe::trace(const Matrix& batch) const {
  if (batch.cols() != spec_.input_dim) {
    fail(ErrorCode::kShape, "probe forward: batch has " + std::to_string(batch.cols()) +
                                " columns, probe expects " + std::to_string(spec_.input_dim));
  }
  ForwardTrace t;
  t.rows = batch.rows();
  t.widths = layer_widths(spec_);
  t.activations.reserve(t.widths.size());
  t.activations.emplace_back(batch.values().begin(), batch.values().end());

  std::vector<double> wt;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const auto& layer = layers_[l];
    const std::size_t in = t.widths[l];
    const std::size_t out = t.widths[l + 1];
    // Transposed copy so the inner loop is a contiguous axpy.
    wt.assign(in * out, 0.0);
    for (std::size_t o = 0; o < out; ++o)
      for (std::size_t i = 0; i < in; ++i) wt[i * out + o] = layer.weight(o, i);

    const auto& x = t.activations[l];
    std::vector<double> y(t.rows * out);
    const bool hidden = l + 1 < layers_.size();
    for (std::size_t r = 0; r < t.rows; ++r) {
      double* yr = y.data() + r * out;
      for (std::size_t o = 0; o < out; ++o) yr[o] = layer.bias[o];
      const double* xr = x.data() + r * in;
      for (std::size_t i = 0; i < in; ++i) {
        const double xi = xr[i];
        if (xi == 0.0) continue;
        const double* wrow = wt.data() + i * out;
        for (std::size_t o = 0; o < out; ++o) yr[o] += xi * wrow[o];
      }
      if (hidden) {
        for (std::size_t o = 0; o < out; ++o) yr[o] = yr[o] > 0.0 ? yr[o] : 0.0;
      }
    }
    t.activations.push_back(std::move(y));
  }
  return t;
}

Matrix Probe::forward(const Matrix& batch) const { return trace(batch).output(); }

ProbeGradients Probe::backward(const Matrix& batch, const Matrix& output_grad,
                               Matrix* input_grad) const {
  return backward(trace(batch), output_grad, input_grad);
}

ProbeGradients Probe::backward(const ForwardTrace& t, const Matrix& output_grad,
                               Matrix* input_grad) const {
  if (output_grad.rows() != t.rows || output_grad.cols() != spec_.output_dim) {
    fail(ErrorCode::kShape, "probe backward: output_grad is " +
                                shape_string(output_grad.rows(), output_grad.cols()) +
                                ", expected " + shape_string(t.rows, spec_.output_dim));
  }
  const std::size_t n_layers = layers_.size();
  std::vector<std::vector<double>> weight_grad(n_layers);
  std::vector<std::vector<double>> bias_grad(n_layers);

  std::vector<double> delta(output_grad.values().begin(), output_grad.values().end());
  for (std::size_t l = n_layers; l-- > 0;) {
    const auto& layer = layers_[l];
    const std::size_t in = t.widths[l];
    const std::size_t out = t.widths[l + 1];
    const auto& x = t.activations[l];

    auto& dw = weight_grad[l];
    auto& db = bias_grad[l];
    dw.assign(out * in, 0.0);
    db.assign(out, 0.0);
    for (std::size_t r = 0; r < t.rows; ++r) {
      const double* dr = delta.data() + r * out;
      const double* xr = x.data() + r * in;
      for (std::size_t o = 0; o < out; ++o) {
        const double d = dr[o];
        if (d == 0.0) continue;
        db[o] += d;
        double* dwrow = dw.data() + o * in;
        for (std::size_t i = 0; i < in; ++i) dwrow[i] += d * xr[i];
      }
    }

    if (l == 0 && input_grad == nullptr) break;

    std::vector<double> prev(t.rows * in, 0.0);
    std::vector<double> wrow(in);
    for (std::size_t o = 0; o < out; ++o) {
      for (std::size_t i = 0; i < in; ++i) wrow[i] = layer.weight(o, i);
      for (std::size_t r = 0; r < t.rows; ++r) {
        const double d = delta[r * out + o];
        if (d == 0.0) continue;
        double* pr = prev.data() + r * in;
        for (std::size_t i = 0; i < in; ++i) pr[i] += d * wrow[i];
      }
    }
    if (l > 0) {
      // ReLU mask: the post-activation is positive exactly where the
      // pre-activation was.
      for (std::size_t k = 0; k < prev.size(); ++k) {
        if (x[k] <= 0.0) prev[k] = 0.0;
      }
    } else {
      std::vector<float> data(prev.begin(), prev.end());
      *input_grad = Matrix(t.rows, in, std::move(data));
    }
    delta = std::move(prev);
  }

  ProbeGradients grads;
  grads.layers.reserve(n_layers);
  for (std::size_t l = 0; l < n_layers; ++l) {
    std::vector<float> w(weight_grad[l].begin(), weight_grad[l].end());
    std::vector<float> b(bias_grad[l].begin(), bias_grad[l].end());
    grads.layers.push_back(
        {Matrix(layers_[l].weight.rows(), layers_[l].weight.cols(), std::move(w)), std::move(b)});
  }
  return grads;
}

std::vector<std::span<float>> Probe::parameters() {
  std::vector<std::span<float>> out;
  out.reserve(layers_.size() * 2);
  for (auto& layer : layers_) {
    out.push_back(layer.weight.values());
    out.push_back(layer.bias);
  }
  return out;
}

std::size_t Probe::parameter_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) n += layer.weight.size() + layer.bias.size();
  return n;
}

}  // namespace syneval
