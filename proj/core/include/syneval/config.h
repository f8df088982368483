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

#ifndef SYNEVAL_CONFIG_H_
#define SYNEVAL_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "syneval/adam.h"
#include "syneval/axes.h"
#include "syneval/transform_spec.h"

namespace syneval {

inline constexpr const char* kConfigSchema = "syneval.config/1";

std::string_view engine_version();

enum class ExtractorKind { kToy, kExternal };

struct ExtractorConfig {
  ExtractorKind kind = ExtractorKind::kToy;
  std::uint64_t seed = 0;         // toy
  std::size_t dim = 64;           // toy
  std::filesystem::path clean_store;  // external
};

struct DatasetConfig {
  std::string name;
  std::filesystem::path manifest;
  Modality modality = Modality::kImage;
  ExtractorConfig extractor;
};

struct JobConfig {
  std::string name;
  std::string dataset;
  Axis axis = Axis::kInformativeness;
  std::string fv;
  std::optional<TransformSpec> transform;
  ProbeOptions probe;
  std::size_t grid_points = kDefaultGridPoints;
  // External datasets only: pairs produced by another tool.
  std::filesystem::path transformed_store;
  std::filesystem::path param_log;
  // Resolved job settings; hashed together with the dataset it reads.
  nlohmann::json resolved;
};

struct RunConfig {
  nlohmann::json raw;  // the document as written
  std::filesystem::path output_dir;
  std::vector<DatasetConfig> datasets;
  std::vector<JobConfig> jobs;

  const DatasetConfig& dataset(std::string_view name) const;
};

// Parses and validates a config document. Relative paths resolve against
// base_dir. Every problem that can be detected without touching media
// (unknown keys, axes, transforms, probe kinds, missing seeds, modality
// mismatches, duplicate job names) raises kConfig before any work starts.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);

// SHA-256 over the canonical document without output_dir, plus the engine
// version. Any field that can change numerics changes the hash.
std::string config_hash(const RunConfig& config);

// SHA-256 over the engine version, the job's resolved settings, its
// dataset entry and the manifest bytes.
std::string job_hash(const RunConfig& config, const JobConfig& job,
                     const std::string& manifest_digest);

}  // namespace syneval

#endif  // SYNEVAL_CONFIG_H_
