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

#include "syneval/trainer.h"

namespace syneval {

ModelStep mse_step(const Probe& probe, const Matrix& x, const Matrix& y) {
  const ForwardTrace t = probe.trace(x);
  LossAndGrad lg = mse_loss_and_grad(t.output(), y);
  return {lg.loss, probe.backward(t, lg.grad).flat()};
}

TrainResult train_probe(const ProbeSpec& spec, const SupervisedSet& train,
                        const SupervisedSet& val, const AdamConfig& cfg) {
  spec.validate();
  if (train.x.cols() != spec.input_dim || train.y.cols() != spec.output_dim) {
    fail(ErrorCode::kShape, "train_probe: data dimensions do not match the probe spec");
  }
  return fit(Probe::init(spec), train, val, cfg, derive_seed(spec.seed, "shuffle"));
}

}  // namespace syneval
