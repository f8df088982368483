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

#ifndef SYNEVAL_ADAM_H_
#define SYNEVAL_ADAM_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "syneval/probe.h"

namespace syneval {

struct AdamConfig {
  double learning_rate = 1e-3;
  double weight_decay = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::size_t batch_size = 32;
  std::size_t max_epochs = 100;
  std::size_t patience = 10;

  void validate() const;
  friend bool operator==(const AdamConfig&, const AdamConfig&) = default;
};

// First and second moment estimates per parameter tensor.
struct AdamState {
  std::vector<std::vector<double>> m;
  std::vector<std::vector<double>> v;
  std::uint64_t step = 0;

  static AdamState for_parameters(std::span<const std::span<float>> params);
};

// One Adam update with bias correction. Weight decay is coupled: the L2 term
// weight_decay * param is added to the gradient before the moment updates.
void adam_step(std::span<const std::span<float>> params, const GradientSet& grads,
               AdamState& state, const AdamConfig& cfg);

void adam_step(Probe& probe, const ProbeGradients& grads, AdamState& state,
               const AdamConfig& cfg);

}  // namespace syneval

#endif  // SYNEVAL_ADAM_H_
