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

#ifndef SYNEVAL_TRAINER_H_
#define SYNEVAL_TRAINER_H_

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "syneval/adam.h"
#include "syneval/error.h"
#include "syneval/matrix.h"
#include "syneval/metrics.h"
#include "syneval/probe.h"
#include "syneval/rng.h"

namespace syneval {

// Inputs and regression targets of one split.
struct SupervisedSet {
  Matrix x;
  Matrix y;
};

struct ModelStep {
  double loss = 0.0;
  GradientSet grads;
};

// MSE loss on (x, y) and its gradients in parameters() order.
ModelStep mse_step(const Probe& probe, const Matrix& x, const Matrix& y);

template <class Model>
concept TrainableModel = requires(Model& m, const Model& cm, const Matrix& x) {
  { cm.forward(x) } -> std::convertible_to<Matrix>;
  { m.parameters() } -> std::convertible_to<std::vector<std::span<float>>>;
  { mse_step(cm, x, x) } -> std::convertible_to<ModelStep>;
};

// Tracks the best validation loss. Epochs are numbered from 1; an epoch
// improves only if its loss is strictly below the best so far.
class EarlyStopper {
 public:
  explicit EarlyStopper(std::size_t patience) : patience_(patience) {}

  // Records one epoch's validation loss; returns true if it is a new best.
  bool observe(double val_loss) {
    ++epoch_;
    if (val_loss < best_loss_) {
      best_loss_ = val_loss;
      best_epoch_ = epoch_;
      stale_ = 0;
      return true;
    }
    ++stale_;
    return false;
  }

  bool should_stop() const { return patience_ > 0 && stale_ >= patience_; }
  std::size_t best_epoch() const { return best_epoch_; }
  double best_loss() const { return best_loss_; }
  std::size_t epochs_seen() const { return epoch_; }

 private:
  std::size_t patience_;
  std::size_t epoch_ = 0;
  std::size_t best_epoch_ = 0;
  std::size_t stale_ = 0;
  double best_loss_ = std::numeric_limits<double>::infinity();
};

template <class Model>
struct FitResult {
  Model model;  // weights from the best-validation epoch
  std::vector<double> train_loss_history;
  std::vector<double> val_loss_history;
  std::size_t stopped_epoch = 0;
  std::size_t best_epoch = 0;
};

namespace internal {

inline void check_split(const SupervisedSet& set, const char* name) {
  if (set.x.rows() == 0) fail(ErrorCode::kConfig, std::string(name) + " split is empty");
  if (set.x.rows() != set.y.rows()) {
    fail(ErrorCode::kShape, std::string(name) + " split: input/target row mismatch");
  }
}

}  // namespace internal

// Mini-batch Adam on MSE, reshuffled every epoch from shuffle_seed, with
// early stopping on validation loss.
template <TrainableModel Model>
FitResult<Model> fit(Model model, const SupervisedSet& train, const SupervisedSet& val,
                     const AdamConfig& cfg, std::uint64_t shuffle_seed) {
  cfg.validate();
  internal::check_split(train, "train");
  internal::check_split(val, "val");
  if (train.x.cols() != val.x.cols() || train.y.cols() != val.y.cols()) {
    fail(ErrorCode::kShape, "train and val splits have different dimensions");
  }

  Rng rng(shuffle_seed);
  AdamState state = AdamState::for_parameters(model.parameters());
  EarlyStopper stopper(cfg.patience);
  FitResult<Model> result{model, {}, {}, 0, 0};

  const std::size_t n = train.x.rows();
  std::vector<std::size_t> order(n);
  std::vector<std::size_t> batch_idx;
  for (std::size_t epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);

    double weighted_loss = 0.0;
    double val_loss = 0.0;
    try {
      for (std::size_t start = 0; start < n; start += cfg.batch_size) {
        const std::size_t stop = std::min(n, start + cfg.batch_size);
        batch_idx.assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                         order.begin() + static_cast<std::ptrdiff_t>(stop));
        const Matrix xb = train.x.gather_rows(batch_idx);
        const Matrix yb = train.y.gather_rows(batch_idx);
        ModelStep step = mse_step(std::as_const(model), xb, yb);
        if (!std::isfinite(step.loss)) {
          fail(ErrorCode::kNumericDivergence,
               "training loss became non-finite at epoch " + std::to_string(epoch));
        }
        adam_step(model.parameters(), step.grads, state, cfg);
        weighted_loss += step.loss * static_cast<double>(stop - start);
      }
      result.train_loss_history.push_back(weighted_loss / static_cast<double>(n));

      val_loss = mse(model.forward(val.x), val.y);
      if (!std::isfinite(val_loss)) {
        fail(ErrorCode::kNumericDivergence,
             "validation loss became non-finite at epoch " + std::to_string(epoch));
      }
    } catch (const Error& e) {
      // Non-finite weights surface inside Matrix; attach the epoch.
      const std::string what = e.what();
      if (e.code() != ErrorCode::kNumericDivergence ||
          what.find("epoch") != std::string::npos) {
        throw;
      }
      fail(ErrorCode::kNumericDivergence, what + " at epoch " + std::to_string(epoch));
    }
    result.val_loss_history.push_back(val_loss);
    if (stopper.observe(val_loss)) result.model = model;
    result.stopped_epoch = epoch;
    if (stopper.should_stop()) break;
  }
  result.best_epoch = stopper.best_epoch();
  return result;
}

using TrainResult = FitResult<Probe>;

TrainResult train_probe(const ProbeSpec& spec, const SupervisedSet& train,
                        const SupervisedSet& val, const AdamConfig& cfg);

}  // namespace syneval

#endif  // SYNEVAL_TRAINER_H_
