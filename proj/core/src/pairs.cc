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

#include "syneval/pairs.h"

#include <cctype>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <unordered_map>

#include "syneval/error.h"
#include "syneval/image_io.h"
#include "syneval/rng.h"
#include "syneval/wav_io.h"

namespace syneval {
namespace {

using nlohmann::json;

json transform_to_json(const TransformSpec& t) {
  return {{"name", t.info().name}, {"fv_target", t.fv_target}, {"min", t.min},
          {"max", t.max},          {"neutral", t.neutral},     {"seed", t.seed}};
}

TransformSpec transform_from_json(const json& j) {
  TransformSpec t = TransformSpec::defaults(parse_transform_kind(j.at("name").get<std::string>()));
  t.fv_target = j.value("fv_target", t.fv_target);
  t.min = j.value("min", t.min);
  t.max = j.value("max", t.max);
  t.neutral = j.value("neutral", t.neutral);
  t.seed = j.value("seed", std::uint64_t{0});
  t.validate();
  return t;
}

std::string safe_file_stem(const std::string& id) {
  std::string out = id;
  for (char& c : out) {
    const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
    if (!ok) c = '_';
  }
  return out;
}

}  // namespace

void PairedEmbeddingSet::validate() const {
  clean.validate();
  transformed.validate();
  if (clean.dim() != transformed.dim()) {
    fail(ErrorCode::kFormat, "clean and transformed stores differ in dim (" +
                                 std::to_string(clean.dim()) + " vs " +
                                 std::to_string(transformed.dim()) + ")");
  }
  const std::size_t n = clean.count();
  if (transformed.count() != n || params_raw.size() != n || params_normalized.size() != n ||
      splits.size() != n) {
    fail(ErrorCode::kShape, "paired set sequences have different lengths");
  }
  if (clean.ids != transformed.ids) fail(ErrorCode::kShape, "paired stores are not aligned by id");
}

std::string PairedEmbeddingSet::transform_name() const {
  return transform ? std::string(transform->info().name) : "latent_action";
}

std::uint64_t media_seed(const TransformSpec& transform, std::string_view sample_id) {
  return derive_seed(derive_seed(transform.seed, sample_id), "media");
}

void write_param_log(const std::filesystem::path& path, const ParamLog& log) {
  if (log.ids.size() != log.raw.size() || log.ids.size() != log.normalized.size()) {
    fail(ErrorCode::kShape, "parameter log sequences have different lengths");
  }
  json entries = json::array();
  for (std::size_t i = 0; i < log.ids.size(); ++i) {
    entries.push_back({{"id", log.ids[i]}, {"raw", log.raw[i]}, {"normalized", log.normalized[i]}});
  }
  const json doc = {{"schema", kParamLogSchema},
                    {"transform", transform_to_json(log.transform)},
                    {"entries", std::move(entries)}};
  std::ofstream out(path, std::ios::trunc);
  if (!out) fail(ErrorCode::kIo, "cannot write '" + path.string() + "'");
  out << doc.dump(1) << "\n";
}

ParamLog read_param_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open parameter log '" + path.string() + "'");
  const json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    fail(ErrorCode::kParse, "parameter log '" + path.string() + "' is not a JSON object");
  }
  if (doc.value("schema", "") != kParamLogSchema) {
    fail(ErrorCode::kVersion, "parameter log '" + path.string() + "' has schema '" +
                                  doc.value("schema", "") + "', expected " + kParamLogSchema);
  }
  ParamLog log;
  try {
    log.transform = transform_from_json(doc.at("transform"));
    for (const auto& e : doc.at("entries")) {
      log.ids.push_back(e.at("id").get<std::string>());
      log.raw.push_back(e.at("raw").get<double>());
      log.normalized.push_back(e.contains("normalized") ? e.at("normalized").get<double>()
                                                        : log.transform.normalize(log.raw.back()));
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::kParse, "parameter log '" + path.string() + "': " + e.what());
  }
  return log;
}

MaterializeResult materialize_pairs(const MediaDataset& dataset, const TransformSpec& transform,
                                    const FeatureExtractor& extractor,
                                    const MaterializeOptions& options) {
  transform.validate();
  if (transform.info().modality != extractor.modality()) {
    fail(ErrorCode::kConfig, std::string(transform.info().name) + " does not apply to " +
                                 std::string(modality_name(extractor.modality())) + " data");
  }
  std::unordered_map<std::string, std::size_t> clean_rows;
  if (options.clean != nullptr) clean_rows = options.clean->index();

  std::filesystem::path media_dir;
  if (!options.output_dir.empty()) {
    std::filesystem::create_directories(options.output_dir);
    if (options.write_media) {
      media_dir = options.output_dir / "media";
      std::filesystem::create_directories(media_dir);
    }
  }

  MaterializeResult result;
  PairedEmbeddingSet& pairs = result.pairs;
  pairs.transform = transform;
  pairs.clean.extractor_id = pairs.transformed.extractor_id = extractor.id();
  pairs.clean.created_by = pairs.transformed.created_by = "syneval materialize_pairs";
  std::vector<float> clean_values, transformed_values;
  std::vector<SampleRecord> media_manifest;

  for (const auto& sample : dataset) {
    const std::string& id = sample.record.id;
    try {
      const double raw = transform.draw(id);
      const Media out = apply_transform(sample.media, transform.kind, raw,
                                        media_seed(transform, id), id);
      std::vector<float> z;
      if (auto it = clean_rows.find(id); it != clean_rows.end()) {
        const auto row = options.clean->matrix.row(it->second);
        z.assign(row.begin(), row.end());
      } else {
        z = extractor.extract(sample.media);
      }
      const auto z_prime = extractor.extract(out);
      if (!media_dir.empty()) {
        SampleRecord rec = sample.record;
        if (const auto* img = std::get_if<ImageRGB>(&out)) {
          rec.media_path = media_dir / (safe_file_stem(id) + ".png");
          write_png(rec.media_path, *img);
        } else {
          rec.media_path = media_dir / (safe_file_stem(id) + ".wav");
          write_wav(rec.media_path, std::get<AudioClip>(out));
        }
        rec.media_path = rec.media_path.lexically_relative(options.output_dir);
        media_manifest.push_back(std::move(rec));
      }
      clean_values.insert(clean_values.end(), z.begin(), z.end());
      transformed_values.insert(transformed_values.end(), z_prime.begin(), z_prime.end());
      pairs.clean.ids.push_back(id);
      pairs.params_raw.push_back(raw);
      pairs.params_normalized.push_back(transform.normalize(raw));
      pairs.splits.push_back(sample.record.split);
    } catch (const Error& e) {
      result.failures.push_back({id, e.what()});
    }
  }

  const double fraction = dataset.empty() ? 0.0
                                          : static_cast<double>(result.failures.size()) /
                                                static_cast<double>(dataset.size());
  if (fraction > options.max_failure_fraction || (dataset.size() > 0 && pairs.clean.ids.empty())) {
    std::string msg = std::to_string(result.failures.size()) + " of " +
                      std::to_string(dataset.size()) + " samples failed under " +
                      std::string(transform.info().name);
    for (std::size_t i = 0; i < result.failures.size() && i < 5; ++i) {
      msg += "\n  " + result.failures[i].id + ": " + result.failures[i].message;
    }
    fail(ErrorCode::kTransform, msg);
  }

  const std::size_t n = pairs.clean.ids.size();
  pairs.transformed.ids = pairs.clean.ids;
  pairs.clean.matrix = Matrix(n, extractor.dim(), std::move(clean_values));
  pairs.transformed.matrix = Matrix(n, extractor.dim(), std::move(transformed_values));

  if (!options.output_dir.empty()) {
    write_embeddings(pairs.clean, options.output_dir / "clean.emb");
    write_embeddings(pairs.transformed, options.output_dir / "transformed.emb");
    write_param_log(options.output_dir / "params.json",
                    {transform, pairs.clean.ids, pairs.params_raw, pairs.params_normalized});
    if (!media_dir.empty()) write_manifest(options.output_dir / "transformed.jsonl", media_manifest);
  }
  return result;
}

PairedEmbeddingSet external_embeddings(const std::vector<SampleRecord>& manifest,
                                       const std::filesystem::path& clean_store,
                                       const std::filesystem::path& transformed_store,
                                       const std::filesystem::path& param_log) {
  const EmbeddingStore clean = read_embeddings(clean_store);
  const EmbeddingStore transformed = read_embeddings(transformed_store);
  if (clean.dim() != transformed.dim()) {
    fail(ErrorCode::kFormat, "clean store dim " + std::to_string(clean.dim()) +
                                 " differs from transformed store dim " +
                                 std::to_string(transformed.dim()));
  }
  const ParamLog log = read_param_log(param_log);

  std::vector<std::string> order;
  order.reserve(manifest.size());
  for (const auto& rec : manifest) order.push_back(rec.id);

  PairedEmbeddingSet pairs;
  pairs.transform = log.transform;
  pairs.clean = clean.select(order);
  pairs.transformed = transformed.select(order);

  std::unordered_map<std::string, std::size_t> logged;
  for (std::size_t i = 0; i < log.ids.size(); ++i) logged.emplace(log.ids[i], i);
  std::vector<std::string> missing;
  for (const auto& rec : manifest) {
    auto it = logged.find(rec.id);
    if (it == logged.end()) {
      missing.push_back(rec.id);
      continue;
    }
    pairs.params_raw.push_back(log.raw[it->second]);
    pairs.params_normalized.push_back(log.normalized[it->second]);
    pairs.splits.push_back(rec.split);
  }
  if (!missing.empty()) {
    std::string msg = std::to_string(missing.size()) + " id(s) missing from parameter log:";
    for (std::size_t i = 0; i < missing.size() && i < 10; ++i) msg += " " + missing[i];
    if (missing.size() > 10) msg += " ...";
    fail(ErrorCode::kAlignment, msg);
  }
  pairs.validate();
  return pairs;
}

}  // namespace syneval
