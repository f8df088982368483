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

#ifndef SYNEVAL_PAIRS_H_
#define SYNEVAL_PAIRS_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "syneval/embedding_store.h"
#include "syneval/extractor.h"
#include "syneval/manifest.h"
#include "syneval/media.h"
#include "syneval/transform_spec.h"

namespace syneval {

// (z, z', p) triples aligned by row: row i of clean and transformed both
// belong to clean.ids[i], which drew params_raw[i].
struct PairedEmbeddingSet {
  EmbeddingStore clean;
  EmbeddingStore transformed;
  std::vector<double> params_raw;
  std::vector<double> params_normalized;
  std::vector<Split> splits;
  // Absent for latent-space fixtures, which have no media transform.
  std::optional<TransformSpec> transform;

  std::size_t size() const { return clean.count(); }
  std::string transform_name() const;

  // Throws kFormat when dims differ and kShape when lengths or ids disagree.
  void validate() const;
};

// On-disk record of the parameter drawn for every sample.
struct ParamLog {
  TransformSpec transform = TransformSpec::defaults(TransformKind::kHueShift);
  std::vector<std::string> ids;
  std::vector<double> raw;
  std::vector<double> normalized;
};

inline constexpr const char* kParamLogSchema = "syneval.paramlog/1";

void write_param_log(const std::filesystem::path& path, const ParamLog& log);
ParamLog read_param_log(const std::filesystem::path& path);

struct SampleFailure {
  std::string id;
  std::string message;
};

struct MaterializeOptions {
  // When set, clean.emb, transformed.emb and params.json are written here.
  std::filesystem::path output_dir;
  // Also write transformed media plus a manifest pointing at them, for
  // external extractors.
  bool write_media = false;
  // Precomputed clean embeddings (any id order); extracted when null.
  const EmbeddingStore* clean = nullptr;
  double max_failure_fraction = 0.01;
};

struct MaterializeResult {
  PairedEmbeddingSet pairs;
  std::vector<SampleFailure> failures;
};

// One transformed variant per sample. Samples whose transform or
// extraction fails are dropped and reported; more than
// max_failure_fraction failures raise kTransform.
MaterializeResult materialize_pairs(const MediaDataset& dataset, const TransformSpec& transform,
                                    const FeatureExtractor& extractor,
                                    const MaterializeOptions& options = {});

// Assembles pairs from containers and a parameter log written by any tool,
// in manifest order. Missing ids raise kAlignment (first ten listed);
// differing dims raise kFormat.
PairedEmbeddingSet external_embeddings(const std::vector<SampleRecord>& manifest,
                                       const std::filesystem::path& clean_store,
                                       const std::filesystem::path& transformed_store,
                                       const std::filesystem::path& param_log);

// Seed for the stochastic part of a sample's transform.
std::uint64_t media_seed(const TransformSpec& transform, std::string_view sample_id);

}  // namespace syneval

#endif  // SYNEVAL_PAIRS_H_
