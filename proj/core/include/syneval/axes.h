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

#ifndef SYNEVAL_AXES_H_
#define SYNEVAL_AXES_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "syneval/adam.h"
#include "syneval/embedding_store.h"
#include "syneval/extractor.h"
#include "syneval/manifest.h"
#include "syneval/matrix.h"
#include "syneval/media.h"
#include "syneval/pairs.h"
#include "syneval/probe.h"
#include "syneval/trainer.h"
#include "syneval/transform_spec.h"

namespace syneval {

enum class Axis {
  kInformativeness,
  kPEquivariance,
  kREquivariance,
  kInvariance,
  kDisentanglement,
};

std::string_view axis_name(Axis axis);
Axis parse_axis(std::string_view name);  // throws kConfig

enum class ProbeKind { kSlp, kMlp, kNone };

std::string_view probe_kind_name(ProbeKind kind);
ProbeKind parse_probe_kind(std::string_view name);  // throws kConfig

struct CurvePoint {
  double param = 0.0;
  double value = 0.0;
};

// One disentanglement bucket: parameters drawn at signed fractions
// [fraction_lo, fraction_hi] of the way from neutral to the range ends.
struct BucketResult {
  std::string label;
  double fraction_lo = 0.0;
  double fraction_hi = 0.0;
  double rmse = 0.0;
  double delta_rmse = 0.0;
};

struct AxisReport {
  std::string job_name;  // set by the runner
  std::string job_hash;
  Axis axis = Axis::kInformativeness;
  std::string extractor_id;
  std::string fv;         // predicted FV (informativeness, disentanglement)
  std::string transform;  // transform name (equivariance, invariance, disentanglement)
  std::string perturbed_fv;
  ProbeKind probe = ProbeKind::kNone;
  std::map<std::string, double> metrics;
  std::vector<CurvePoint> curve;
  std::vector<BucketResult> buckets;
  nlohmann::json config = nlohmann::json::object();
  std::map<std::string, std::uint64_t> seeds;
  std::vector<std::string> provenance;
};

struct ProbeOptions {
  ProbeKind kind = ProbeKind::kMlp;
  // Overrides the axis default widths for MLP probes.
  std::optional<std::vector<std::size_t>> hidden_dims;
  AdamConfig adam;
  std::uint64_t seed = 0;

  std::vector<std::size_t> resolve_hidden(const std::vector<std::size_t>& mlp_default) const;
  nlohmann::json to_json() const;
};

nlohmann::json adam_to_json(const AdamConfig& cfg);

struct SplitIndices {
  std::vector<std::size_t> train;
  std::vector<std::size_t> val;
  std::vector<std::size_t> test;

  static SplitIndices from(std::span<const Split> splits);
  // Throws kConfig naming the first empty split.
  void require_nonempty(std::string_view what) const;
};

// Embeddings with one scalar FV per row.
struct LabeledEmbeddings {
  EmbeddingStore store;
  std::vector<Split> splits;
  std::vector<double> fv;
  std::string fv_name;

  void validate() const;
};

struct InformativenessResult {
  AxisReport report;
  Probe probe;
};

inline const std::vector<std::size_t> kInformativenessHidden = {512, 256};
inline const std::vector<std::size_t> kPEquivarianceHidden = {512, 256};
inline const std::vector<std::size_t> kREquivarianceHidden = {512, 512};
inline constexpr std::size_t kParamProjectionDim = 32;
inline constexpr std::size_t kDefaultGridPoints = 11;

// z -> FV probe trained on train, early-stopped on val, scored on test.
InformativenessResult eval_informativeness(const LabeledEmbeddings& data,
                                           const ProbeOptions& options);

// [z | z'] -> normalized parameter.
AxisReport eval_p_equivariance(const PairedEmbeddingSet& pairs, const ProbeOptions& options);

// Predicts z' from z and a learned 32-dimensional projection of the
// normalized parameter. Input rows are [z | p] (embed_dim + 1 columns).
class ConditionedProbe {
 public:
  static ConditionedProbe init(std::size_t embed_dim, std::size_t param_dim,
                               const std::vector<std::size_t>& hidden, std::uint64_t seed);
  ConditionedProbe(DenseLayer projector, Probe head);

  std::size_t embed_dim() const { return head_.spec().output_dim; }
  const DenseLayer& projector() const { return projector_; }
  const Probe& head() const { return head_; }

  // [z | projector(p)], the head's input.
  Matrix head_input(const Matrix& x) const;
  Matrix forward(const Matrix& x) const;
  // Parameter order: projector weight, projector bias, then the head's.
  std::vector<std::span<float>> parameters();

  friend bool operator==(const ConditionedProbe&, const ConditionedProbe&) = default;

 private:
  DenseLayer projector_;  // param_dim x 1
  Probe head_;
};

ModelStep mse_step(const ConditionedProbe& model, const Matrix& x, const Matrix& y);

// z and z' are L2-normalized first; reports test MSE (mean over elements)
// and the mean cosine between predicted and true z'.
AxisReport eval_r_equivariance(const PairedEmbeddingSet& pairs, const ProbeOptions& options);

// Embedding of sample `row` after perturbation at parameter `param`.
using PerturbFn = std::function<std::vector<float>(std::size_t row, double param)>;

// Mean cosine(z, perturb(i, g)) over rows for every grid value g.
AxisReport eval_invariance(const Matrix& clean, std::span<const double> grid,
                           const PerturbFn& perturb);

// Grid curve over the test split of a media dataset. `clean` supplies
// precomputed clean embeddings by id when non-null.
AxisReport eval_invariance(const MediaDataset& dataset, const TransformSpec& transform,
                           const FeatureExtractor& extractor,
                           std::size_t grid_points = kDefaultGridPoints,
                           const EmbeddingStore* clean = nullptr);

struct BucketSpec {
  std::string_view label;
  double lo;
  double hi;
};

inline constexpr BucketSpec kDisentanglementBuckets[] = {
    {"--", -1.0, -0.5}, {"-", -0.5, 0.0}, {"+", 0.0, 0.5}, {"++", 0.5, 1.0}};

// RMSE of `probe` on perturbed rows minus its RMSE on the clean rows, per
// bucket. fv_true holds the clean ground truth, which is also the target
// under perturbation.
AxisReport eval_disentanglement(const Probe& probe, const Matrix& clean,
                                std::span<const double> fv_true,
                                std::span<const std::string> ids, const ParameterRange& range,
                                const PerturbFn& perturb);

// Media version over the test split. Throws kConfig when the transform
// targets the predicted FV itself.
AxisReport eval_disentanglement(const Probe& probe, std::string_view predicted_fv,
                                const MediaDataset& dataset, const TransformSpec& transform,
                                const FeatureExtractor& extractor,
                                const EmbeddingStore* clean = nullptr);

}  // namespace syneval

#endif  // SYNEVAL_AXES_H_
