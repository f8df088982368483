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

#ifndef SYNEVAL_TESTS_MINI_PROJECT_H_
#define SYNEVAL_TESTS_MINI_PROJECT_H_

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "syneval/fixtures.h"
#include "syneval/image_io.h"
#include "syneval/manifest.h"
#include "syneval/rng.h"

namespace syneval::testing {

// Writes `n` small textured PNGs plus images.jsonl into `dir`. With
// `all_train` every sample lands in the train split.
inline void write_image_dataset(const std::filesystem::path& dir, std::size_t n,
                                bool all_train = false, const std::string& stem = "images") {
  std::filesystem::create_directories(dir / stem);
  Rng rng(derive_seed(77, stem));
  const auto splits = synthetic_splits(n);
  std::vector<SampleRecord> records;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string id = stem + std::to_string(i);
    const auto rel = std::filesystem::path(stem) / (id + ".png");
    write_png(dir / rel, gen_textured_image(16, 16, rng.uniform(), rng.uniform(0.3, 0.9),
                                            rng.uniform(0.3, 0.9), i));
    records.push_back({id, rel, all_train ? Split::kTrain : splits[i], {}, {}, {}});
  }
  write_manifest(dir / (stem + ".jsonl"), records);
}

// A two-job config over write_image_dataset output: a quick SLP
// informativeness job and a three-point invariance job.
inline nlohmann::json mini_config() {
  using nlohmann::json;
  return {{"schema", "syneval.config/1"},
          {"output_dir", "out"},
          {"training", {{"max_epochs", 5}, {"patience", 2}}},
          {"datasets",
           json::array({{{"name", "images"},
                         {"manifest", "images.jsonl"},
                         {"modality", "image"},
                         {"extractor", {{"kind", "toy"}, {"seed", 1}, {"dim", 8}}}}})},
          {"jobs", json::array({{{"name", "hue"},
                                 {"dataset", "images"},
                                 {"axis", "informativeness"},
                                 {"fv", "hue"},
                                 {"probe", "slp"},
                                 {"seed", 3}},
                                {{"name", "bright-inv"},
                                 {"dataset", "images"},
                                 {"axis", "invariance"},
                                 {"grid_points", 3},
                                 {"transform", {{"name", "brightness_shift"}, {"seed", 4}}}}})}};
}

inline std::filesystem::path write_config(const std::filesystem::path& dir,
                                          const nlohmann::json& doc,
                                          const std::string& name = "config.json") {
  std::ofstream(dir / name) << doc.dump(2);
  return dir / name;
}

}  // namespace syneval::testing

#endif  // SYNEVAL_TESTS_MINI_PROJECT_H_
