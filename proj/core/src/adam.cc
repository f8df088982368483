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

#include "syneval/adam.h"

#include <cmath>
#include <string>

#include "syneval/error.h"

namespace syneval {

void AdamConfig::validate() const {
  if (!(learning_rate > 0.0)) fail(ErrorCode::kConfig, "adam: learning_rate must be > 0");
  if (!(weight_decay >= 0.0)) fail(ErrorCode::kConfig, "adam: weight_decay must be >= 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) {
    fail(ErrorCode::kConfig, "adam: betas must lie in [0, 1)");
  }
  if (!(epsilon > 0.0)) fail(ErrorCode::kConfig, "adam: epsilon must be > 0");
  if (batch_size == 0) fail(ErrorCode::kConfig, "adam: batch_size must be >= 1");
  if (max_epochs == 0) fail(ErrorCode::kConfig, "adam: max_epochs must be >= 1");
}

AdamState AdamState::for_parameters(std::span<const std::span<float>> params) {
  AdamState s;
  for (const auto& p : params) {
    s.m.emplace_back(p.size(), 0.0);
    s.v.emplace_back(p.size(), 0.0);
  }
  return s;
}

void adam_step(std::span<const std::span<float>> params, const GradientSet& grads,
               AdamState& state, const AdamConfig& cfg) {
  if (params.size() != grads.size() || state.m.size() != params.size() ||
      state.v.size() != params.size()) {
    fail(ErrorCode::kShape, "adam_step: parameter/gradient/state tensor count mismatch");
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double bias1 = 1.0 - std::pow(cfg.beta1, t);
  const double bias2 = 1.0 - std::pow(cfg.beta2, t);
  for (std::size_t k = 0; k < params.size(); ++k) {
    auto p = params[k];
    const auto& g = grads[k];
    auto& m = state.m[k];
    auto& v = state.v[k];
    if (g.size() != p.size() || m.size() != p.size() || v.size() != p.size()) {
      fail(ErrorCode::kShape, "adam_step: tensor " + std::to_string(k) + " size mismatch");
    }
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double gi = static_cast<double>(g[i]) + cfg.weight_decay * p[i];
      m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * gi;
      v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * gi * gi;
      const double m_hat = m[i] / bias1;
      const double v_hat = v[i] / bias2;
      p[i] = static_cast<float>(p[i] - cfg.learning_rate * m_hat / (std::sqrt(v_hat) + cfg.epsilon));
    }
  }
}

void adam_step(Probe& probe, const ProbeGradients& grads, AdamState& state,
               const AdamConfig& cfg) {
  const auto params = probe.parameters();
  adam_step(params, grads.flat(), state, cfg);
}

}  // namespace syneval
