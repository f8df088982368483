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

#include "syneval/axes.h"

#include <cmath>
#include <numeric>
#include <unordered_map>

#include "syneval/error.h"
#include "syneval/metrics.h"
#include "syneval/rng.h"

namespace syneval {
namespace {

using nlohmann::json;

constexpr std::string_view kAxisNames[] = {"informativeness", "p_equivariance", "r_equivariance",
                                           "invariance", "disentanglement"};

Matrix column(std::span<const double> values, std::span<const std::size_t> rows) {
  Matrix m(rows.size(), 1);
  for (std::size_t i = 0; i < rows.size(); ++i) m(i, 0) = static_cast<float>(values[rows[i]]);
  return m;
}

double mean_of(std::span<const double> values, std::span<const std::size_t> rows) {
  double acc = 0.0;
  for (std::size_t r : rows) acc += values[r];
  return acc / static_cast<double>(rows.size());
}

// RMSE of always predicting the training mean.
double constant_baseline_rmse(std::span<const double> values, const SplitIndices& split) {
  const double mu = mean_of(values, split.train);
  double acc = 0.0;
  for (std::size_t r : split.test) acc += (values[r] - mu) * (values[r] - mu);
  return std::sqrt(acc / static_cast<double>(split.test.size()));
}

void record_training(AxisReport& report, const FitResult<Probe>& fit) {
  report.metrics["best_epoch"] = static_cast<double>(fit.best_epoch);
  report.metrics["stopped_epoch"] = static_cast<double>(fit.stopped_epoch);
  report.metrics["val_mse"] = fit.val_loss_history.at(fit.best_epoch - 1);
}

// Trains a scalar-output probe and fills the RMSE metrics shared by
// informativeness and P-equivariance.
Probe train_scalar_probe(AxisReport& report, const Matrix& x, std::span<const double> target,
                         const SplitIndices& split, const ProbeOptions& options,
                         const std::vector<std::size_t>& mlp_default) {
  const ProbeSpec spec{x.cols(), options.resolve_hidden(mlp_default), 1, options.seed};
  const SupervisedSet train{x.gather_rows(split.train), column(target, split.train)};
  const SupervisedSet val{x.gather_rows(split.val), column(target, split.val)};
  TrainResult fit = train_probe(spec, train, val, options.adam);

  const Matrix pred = fit.model.forward(x.gather_rows(split.test));
  report.metrics["rmse"] = rmse(pred, column(target, split.test));
  report.metrics["baseline_rmse"] = constant_baseline_rmse(target, split);
  record_training(report, fit);
  report.probe = options.kind;
  report.config["probe"] = options.to_json();
  report.seeds["probe"] = options.seed;
  return std::move(fit.model);
}

const BucketSpec& bucket(std::size_t i) { return kDisentanglementBuckets[i]; }

std::vector<std::size_t> test_rows(const MediaDataset& dataset) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    if (dataset[i].record.split == Split::kTest) rows.push_back(i);
  }
  if (rows.empty()) fail(ErrorCode::kConfig, "test split is empty");
  return rows;
}

// Clean embeddings for the listed dataset rows, from `clean` when given.
Matrix clean_embeddings(const MediaDataset& dataset, std::span<const std::size_t> rows,
                        const FeatureExtractor& extractor, const EmbeddingStore* clean) {
  Matrix out(rows.size(), extractor.dim());
  std::unordered_map<std::string, std::size_t> where;
  if (clean != nullptr) where = clean->index();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& sample = dataset[rows[i]];
    std::vector<float> z;
    if (auto it = where.find(sample.record.id); it != where.end()) {
      const auto row = clean->matrix.row(it->second);
      z.assign(row.begin(), row.end());
    } else {
      z = extractor.extract(sample.media);
    }
    if (z.size() != extractor.dim()) fail(ErrorCode::kShape, "extractor returned the wrong dim");
    std::copy(z.begin(), z.end(), out.row(i).begin());
  }
  return out;
}

PerturbFn media_perturbation(const MediaDataset& dataset, std::vector<std::size_t> rows,
                             const TransformSpec& transform, const FeatureExtractor& extractor) {
  return [&dataset, rows = std::move(rows), transform, &extractor](std::size_t i, double param) {
    const auto& sample = dataset[rows[i]];
    const Media out = apply_transform(sample.media, transform.kind, param,
                                      media_seed(transform, sample.record.id), sample.record.id);
    return extractor.extract(out);
  };
}

json transform_json(const TransformSpec& t) {
  return {{"name", t.info().name}, {"fv_target", t.fv_target}, {"min", t.min},
          {"max", t.max},          {"neutral", t.neutral},     {"seed", t.seed}};
}

void describe_transform(AxisReport& report, const PairedEmbeddingSet& pairs) {
  report.transform = pairs.transform_name();
  if (pairs.transform) {
    report.config["transform"] = transform_json(*pairs.transform);
    report.seeds["transform"] = pairs.transform->seed;
  }
}

}  // namespace

std::string_view axis_name(Axis axis) { return kAxisNames[static_cast<std::size_t>(axis)]; }

Axis parse_axis(std::string_view name) {
  for (std::size_t i = 0; i < std::size(kAxisNames); ++i) {
    if (kAxisNames[i] == name) return static_cast<Axis>(i);
  }
  fail(ErrorCode::kConfig, "unknown axis '" + std::string(name) +
                               "' (known: informativeness, p_equivariance, r_equivariance, "
                               "invariance, disentanglement)");
}

std::string_view probe_kind_name(ProbeKind kind) {
  switch (kind) {
    case ProbeKind::kSlp: return "slp";
    case ProbeKind::kMlp: return "mlp";
    case ProbeKind::kNone: return "none";
  }
  return "none";
}

ProbeKind parse_probe_kind(std::string_view name) {
  if (name == "slp") return ProbeKind::kSlp;
  if (name == "mlp") return ProbeKind::kMlp;
  if (name == "none") return ProbeKind::kNone;
  fail(ErrorCode::kConfig, "unknown probe kind '" + std::string(name) + "' (known: slp, mlp)");
}

std::vector<std::size_t> ProbeOptions::resolve_hidden(
    const std::vector<std::size_t>& mlp_default) const {
  if (kind == ProbeKind::kSlp) return {};
  if (kind == ProbeKind::kNone) fail(ErrorCode::kConfig, "this axis needs a trained probe");
  return hidden_dims.value_or(mlp_default);
}

json adam_to_json(const AdamConfig& cfg) {
  return {{"learning_rate", cfg.learning_rate}, {"weight_decay", cfg.weight_decay},
          {"beta1", cfg.beta1},                 {"beta2", cfg.beta2},
          {"epsilon", cfg.epsilon},             {"batch_size", cfg.batch_size},
          {"max_epochs", cfg.max_epochs},       {"patience", cfg.patience}};
}

json ProbeOptions::to_json() const {
  json j = {{"kind", probe_kind_name(kind)}, {"seed", seed}, {"adam", adam_to_json(adam)}};
  if (hidden_dims) j["hidden_dims"] = *hidden_dims;
  return j;
}

SplitIndices SplitIndices::from(std::span<const Split> splits) {
  SplitIndices out;
  for (std::size_t i = 0; i < splits.size(); ++i) {
    switch (splits[i]) {
      case Split::kTrain: out.train.push_back(i); break;
      case Split::kVal: out.val.push_back(i); break;
      case Split::kTest: out.test.push_back(i); break;
    }
  }
  return out;
}

void SplitIndices::require_nonempty(std::string_view what) const {
  const char* empty = train.empty() ? "train" : val.empty() ? "val" : test.empty() ? "test" : nullptr;
  if (empty != nullptr) {
    fail(ErrorCode::kConfig, std::string(what) + ": " + empty + " split is empty");
  }
}

void LabeledEmbeddings::validate() const {
  store.validate();
  if (splits.size() != store.count()) fail(ErrorCode::kShape, "split labels do not match store");
  if (fv.size() != store.count()) {
    fail(ErrorCode::kConfig, "FV '" + fv_name + "' is missing for some samples");
  }
  for (double v : fv) {
    if (!std::isfinite(v)) fail(ErrorCode::kConfig, "FV '" + fv_name + "' has non-finite values");
  }
}

InformativenessResult eval_informativeness(const LabeledEmbeddings& data,
                                           const ProbeOptions& options) {
  data.validate();
  const SplitIndices split = SplitIndices::from(data.splits);
  split.require_nonempty("informativeness");

  AxisReport report;
  report.axis = Axis::kInformativeness;
  report.extractor_id = data.store.extractor_id;
  report.fv = data.fv_name;
  Probe probe = train_scalar_probe(report, data.store.matrix, data.fv, split, options,
                                   kInformativenessHidden);
  return {std::move(report), std::move(probe)};
}

AxisReport eval_p_equivariance(const PairedEmbeddingSet& pairs, const ProbeOptions& options) {
  if (pairs.clean.dim() != pairs.transformed.dim()) {
    fail(ErrorCode::kShape, "clean and transformed embeddings differ in dim");
  }
  pairs.validate();
  const SplitIndices split = SplitIndices::from(pairs.splits);
  split.require_nonempty("p_equivariance");

  AxisReport report;
  report.axis = Axis::kPEquivariance;
  report.extractor_id = pairs.clean.extractor_id;
  describe_transform(report, pairs);
  const Matrix x = hconcat(pairs.clean.matrix, pairs.transformed.matrix);
  train_scalar_probe(report, x, pairs.params_normalized, split, options, kPEquivarianceHidden);
  return report;
}

ConditionedProbe ConditionedProbe::init(std::size_t embed_dim, std::size_t param_dim,
                                        const std::vector<std::size_t>& hidden,
                                        std::uint64_t seed) {
  if (embed_dim == 0 || param_dim == 0) fail(ErrorCode::kShape, "conditioned probe needs dims");
  const Probe projector = Probe::init({1, {}, param_dim, derive_seed(seed, "projector")});
  Probe head = Probe::init({embed_dim + param_dim, hidden, embed_dim, derive_seed(seed, "head")});
  return {projector.layers().front(), std::move(head)};
}

ConditionedProbe::ConditionedProbe(DenseLayer projector, Probe head)
    : projector_(std::move(projector)), head_(std::move(head)) {
  if (projector_.weight.cols() != 1 || projector_.bias.size() != projector_.weight.rows() ||
      head_.spec().input_dim != head_.spec().output_dim + projector_.weight.rows()) {
    fail(ErrorCode::kShape, "conditioned probe: projector and head shapes disagree");
  }
}

Matrix ConditionedProbe::head_input(const Matrix& x) const {
  const std::size_t d = embed_dim();
  const std::size_t k = projector_.weight.rows();
  if (x.cols() != d + 1) {
    fail(ErrorCode::kShape, "conditioned probe expects " + std::to_string(d + 1) + " columns");
  }
  Matrix out(x.rows(), d + k);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto src = x.row(i);
    auto dst = out.row(i);
    std::copy(src.begin(), src.begin() + static_cast<std::ptrdiff_t>(d), dst.begin());
    const double p = src[d];
    for (std::size_t j = 0; j < k; ++j) {
      dst[d + j] = static_cast<float>(projector_.weight(j, 0) * p + projector_.bias[j]);
    }
  }
  return out;
}

Matrix ConditionedProbe::forward(const Matrix& x) const { return head_.forward(head_input(x)); }

std::vector<std::span<float>> ConditionedProbe::parameters() {
  std::vector<std::span<float>> out = {projector_.weight.values(), projector_.bias};
  for (auto p : head_.parameters()) out.push_back(p);
  return out;
}

ModelStep mse_step(const ConditionedProbe& model, const Matrix& x, const Matrix& y) {
  const Matrix input = model.head_input(x);
  const ForwardTrace t = model.head().trace(input);
  const LossAndGrad lg = mse_loss_and_grad(t.output(), y);
  Matrix input_grad;
  ProbeGradients head_grads = model.head().backward(t, lg.grad, &input_grad);

  const std::size_t d = model.embed_dim();
  const std::size_t k = model.projector().weight.rows();
  std::vector<double> dw(k, 0.0), db(k, 0.0);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const double p = x(i, d);
    for (std::size_t j = 0; j < k; ++j) {
      const double g = input_grad(i, d + j);
      dw[j] += g * p;
      db[j] += g;
    }
  }
  ModelStep step{lg.loss, {}};
  step.grads.emplace_back(dw.begin(), dw.end());
  step.grads.emplace_back(db.begin(), db.end());
  for (auto& g : head_grads.flat()) step.grads.push_back(std::move(g));
  return step;
}

AxisReport eval_r_equivariance(const PairedEmbeddingSet& pairs, const ProbeOptions& options) {
  pairs.validate();
  const SplitIndices split = SplitIndices::from(pairs.splits);
  split.require_nonempty("r_equivariance");

  // l2_normalize_rows raises kDegenerateInput on zero embeddings.
  const Matrix z = l2_normalize_rows(pairs.clean.matrix);
  const Matrix z_prime = l2_normalize_rows(pairs.transformed.matrix);
  const std::size_t d = z.cols();
  Matrix x(z.rows(), d + 1);
  for (std::size_t i = 0; i < z.rows(); ++i) {
    std::copy(z.row(i).begin(), z.row(i).end(), x.row(i).begin());
    x(i, d) = static_cast<float>(pairs.params_normalized[i]);
  }

  const auto hidden = options.resolve_hidden(kREquivarianceHidden);
  ConditionedProbe model = ConditionedProbe::init(d, kParamProjectionDim, hidden, options.seed);
  const SupervisedSet train{x.gather_rows(split.train), z_prime.gather_rows(split.train)};
  const SupervisedSet val{x.gather_rows(split.val), z_prime.gather_rows(split.val)};
  auto fit = syneval::fit(std::move(model), train, val, options.adam,
                          derive_seed(options.seed, "shuffle"));

  const Matrix target = z_prime.gather_rows(split.test);
  const Matrix pred = fit.model.forward(x.gather_rows(split.test));
  double cos_sum = 0.0;
  double identity_sum = 0.0;
  for (std::size_t i = 0; i < pred.rows(); ++i) {
    double norm = 0.0;
    for (float v : pred.row(i)) norm += static_cast<double>(v) * v;
    cos_sum += norm > 0.0 ? cosine_similarity(pred.row(i), target.row(i)) : 0.0;
    identity_sum += cosine_similarity(z.row(split.test[i]), target.row(i));
  }

  AxisReport report;
  report.axis = Axis::kREquivariance;
  report.extractor_id = pairs.clean.extractor_id;
  describe_transform(report, pairs);
  report.probe = options.kind;
  report.metrics["mse"] = mse(pred, target);
  report.metrics["cosine_mean"] = cos_sum / static_cast<double>(pred.rows());
  report.metrics["identity_cosine_mean"] = identity_sum / static_cast<double>(pred.rows());
  report.metrics["best_epoch"] = static_cast<double>(fit.best_epoch);
  report.metrics["stopped_epoch"] = static_cast<double>(fit.stopped_epoch);
  report.metrics["val_mse"] = fit.val_loss_history.at(fit.best_epoch - 1);
  json probe = options.to_json();
  probe["param_projection_dim"] = kParamProjectionDim;
  report.config["probe"] = std::move(probe);
  report.seeds["probe"] = options.seed;
  return report;
}

AxisReport eval_invariance(const Matrix& clean, std::span<const double> grid,
                           const PerturbFn& perturb) {
  if (clean.rows() == 0) fail(ErrorCode::kConfig, "invariance needs at least one sample");
  if (grid.empty()) fail(ErrorCode::kConfig, "invariance grid is empty");
  AxisReport report;
  report.axis = Axis::kInvariance;
  double total = 0.0;
  for (double g : grid) {
    double acc = 0.0;
    for (std::size_t i = 0; i < clean.rows(); ++i) {
      const auto z_prime = perturb(i, g);
      if (z_prime.size() != clean.cols()) fail(ErrorCode::kShape, "perturbed embedding dim");
      acc += cosine_similarity(clean.row(i), z_prime);
    }
    const double mean = acc / static_cast<double>(clean.rows());
    report.curve.push_back({g, mean});
    total += mean;
  }
  report.metrics["cosine_mean"] = total / static_cast<double>(grid.size());
  report.metrics["grid_points"] = static_cast<double>(grid.size());
  return report;
}

AxisReport eval_invariance(const MediaDataset& dataset, const TransformSpec& transform,
                           const FeatureExtractor& extractor, std::size_t grid_points,
                           const EmbeddingStore* clean) {
  transform.validate();
  auto rows = test_rows(dataset);
  const Matrix z = clean_embeddings(dataset, rows, extractor, clean);
  const auto grid = transform.grid(grid_points);
  AxisReport report =
      eval_invariance(z, grid, media_perturbation(dataset, std::move(rows), transform, extractor));
  report.extractor_id = extractor.id();
  report.transform = std::string(transform.info().name);
  report.config["transform"] = transform_json(transform);
  report.config["grid_points"] = grid_points;
  report.seeds["transform"] = transform.seed;
  return report;
}

AxisReport eval_disentanglement(const Probe& probe, const Matrix& clean,
                                std::span<const double> fv_true,
                                std::span<const std::string> ids, const ParameterRange& range,
                                const PerturbFn& perturb) {
  const std::size_t n = clean.rows();
  if (n == 0) fail(ErrorCode::kConfig, "disentanglement needs at least one sample");
  if (fv_true.size() != n || ids.size() != n) {
    fail(ErrorCode::kShape, "disentanglement inputs are not aligned");
  }
  if (probe.spec().input_dim != clean.cols() || probe.spec().output_dim != 1) {
    fail(ErrorCode::kShape, "disentanglement probe does not match the embeddings");
  }
  if (range.neutral < range.min || range.neutral > range.max) {
    fail(ErrorCode::kConfig, "disentanglement needs the neutral parameter inside the range");
  }

  Matrix truth(n, 1);
  for (std::size_t i = 0; i < n; ++i) truth(i, 0) = static_cast<float>(fv_true[i]);
  const double clean_rmse = rmse(probe.forward(clean), truth);

  AxisReport report;
  report.axis = Axis::kDisentanglement;
  report.probe = probe.spec().hidden_dims.empty() ? ProbeKind::kSlp : ProbeKind::kMlp;
  report.metrics["clean_rmse"] = clean_rmse;
  double max_abs = 0.0;
  for (std::size_t b = 0; b < std::size(kDisentanglementBuckets); ++b) {
    const BucketSpec& spec = bucket(b);
    Matrix perturbed(n, clean.cols());
    for (std::size_t i = 0; i < n; ++i) {
      Rng rng(derive_seed(range.seed, ids[i] + "/bucket" + std::string(spec.label)));
      const double param = range.at_fraction(rng.uniform(spec.lo, spec.hi));
      const auto z = perturb(i, param);
      if (z.size() != clean.cols()) fail(ErrorCode::kShape, "perturbed embedding dim");
      std::copy(z.begin(), z.end(), perturbed.row(i).begin());
    }
    const double r = rmse(probe.forward(perturbed), truth);
    report.buckets.push_back({std::string(spec.label), spec.lo, spec.hi, r, r - clean_rmse});
    report.metrics["delta_rmse[" + std::string(spec.label) + "]"] = r - clean_rmse;
    max_abs = std::max(max_abs, std::abs(r - clean_rmse));
  }
  report.metrics["max_abs_delta_rmse"] = max_abs;
  report.seeds["buckets"] = range.seed;
  return report;
}

AxisReport eval_disentanglement(const Probe& probe, std::string_view predicted_fv,
                                const MediaDataset& dataset, const TransformSpec& transform,
                                const FeatureExtractor& extractor, const EmbeddingStore* clean) {
  transform.validate();
  if (transform.fv_target == predicted_fv) {
    fail(ErrorCode::kConfig, "transform " + std::string(transform.info().name) +
                                 " targets the predicted FV '" + std::string(predicted_fv) +
                                 "'; that is equivariance, not disentanglement");
  }
  auto rows = test_rows(dataset);
  const Matrix z = clean_embeddings(dataset, rows, extractor, clean);
  std::vector<double> truth;
  std::vector<std::string> ids;
  for (std::size_t r : rows) {
    truth.push_back(resolve_fv(predicted_fv, dataset[r].record, dataset[r].media));
    ids.push_back(dataset[r].record.id);
  }
  AxisReport report =
      eval_disentanglement(probe, z, truth, ids, transform.range(),
                           media_perturbation(dataset, std::move(rows), transform, extractor));
  report.extractor_id = extractor.id();
  report.fv = std::string(predicted_fv);
  report.transform = std::string(transform.info().name);
  report.perturbed_fv = transform.fv_target;
  report.config["transform"] = transform_json(transform);
  report.seeds["transform"] = transform.seed;
  return report;
}

}  // namespace syneval
