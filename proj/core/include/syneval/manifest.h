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

#ifndef SYNEVAL_MANIFEST_H_
#define SYNEVAL_MANIFEST_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace syneval {

enum class Split { kTrain, kVal, kTest };

std::string_view split_name(Split split);
// Throws kParse listing the allowed names.
Split parse_split(std::string_view name);

struct SampleRecord {
  std::string id;
  std::filesystem::path media_path;
  Split split = Split::kTrain;
  std::map<std::string, double> fv_values;
  std::optional<double> duration_s;
  std::optional<std::string> transcript;

  friend bool operator==(const SampleRecord&, const SampleRecord&) = default;
};

// JSON-lines manifest, one record per non-blank line. Relative media paths
// are resolved against `base_dir`. Schema violations raise kParse with the
// 1-based line number; duplicate ids raise kParse naming the id.
std::vector<SampleRecord> parse_manifest(std::string_view text,
                                         const std::filesystem::path& base_dir = {});
std::vector<SampleRecord> load_manifest(const std::filesystem::path& path);

// Inverse of parse_manifest (paths written as given).
std::string format_manifest(const std::vector<SampleRecord>& records);
void write_manifest(const std::filesystem::path& path, const std::vector<SampleRecord>& records);

}  // namespace syneval

#endif  // SYNEVAL_MANIFEST_H_
