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

#include <gtest/gtest.h>

#include <functional>
#include <nlohmann/json.hpp>
#include <string>

#include "mini_project.h"
#include "syneval/config.h"
#include "test_util.h"

namespace syneval {
namespace {

using nlohmann::json;
using syneval::testing::mini_config;

RunConfig parse(const json& doc) { return parse_config(doc, "/base"); }

TEST(ConfigTest, ParsesAndResolvesPaths) {
  const RunConfig cfg = parse(mini_config());
  EXPECT_EQ(cfg.output_dir, std::filesystem::path("/base/out"));
  ASSERT_EQ(cfg.datasets.size(), 1u);
  EXPECT_EQ(cfg.datasets[0].manifest, std::filesystem::path("/base/images.jsonl"));
  EXPECT_EQ(cfg.datasets[0].extractor.dim, 8u);
  ASSERT_EQ(cfg.jobs.size(), 2u);
  EXPECT_EQ(cfg.jobs[0].probe.kind, ProbeKind::kSlp);
  EXPECT_EQ(cfg.jobs[0].probe.adam.max_epochs, 5u);
  EXPECT_EQ(cfg.jobs[1].probe.kind, ProbeKind::kNone);
  ASSERT_TRUE(cfg.jobs[1].transform.has_value());
  EXPECT_EQ(cfg.jobs[1].transform->seed, 4u);
  EXPECT_EQ(cfg.jobs[1].grid_points, 3u);
  EXPECT_EQ(&cfg.dataset("images"), &cfg.datasets[0]);
  EXPECT_SYNEVAL_ERROR(cfg.dataset("nope"), kConfig);
}

// Applies `edit` to a copy of the mini config and returns it.
json edited(const std::function<void(json&)>& edit) {
  json doc = mini_config();
  edit(doc);
  return doc;
}

TEST(ConfigTest, EveryNumericFieldChangesTheHashes) {
  const RunConfig base = parse(mini_config());
  const std::string base_hash = config_hash(base);
  const std::vector<std::function<void(json&)>> edits = {
      [](json& d) { d["training"]["max_epochs"] = 6; },
      [](json& d) { d["training"]["patience"] = 3; },
      [](json& d) { d["training"]["learning_rate"] = 2e-3; },
      [](json& d) { d["datasets"][0]["extractor"]["seed"] = 2; },
      [](json& d) { d["datasets"][0]["extractor"]["dim"] = 9; },
      [](json& d) { d["jobs"][0]["seed"] = 4; },
      [](json& d) { d["jobs"][1]["grid_points"] = 4; },
      [](json& d) { d["jobs"][1]["transform"]["seed"] = 5; },
      [](json& d) { d["jobs"][1]["transform"]["max"] = 1.5; },
  };
  for (std::size_t i = 0; i < edits.size(); ++i) {
    const RunConfig changed = parse(edited(edits[i]));
    EXPECT_NE(config_hash(changed), base_hash) << "edit " << i;
    bool any_job_changed = false;
    for (std::size_t j = 0; j < base.jobs.size(); ++j) {
      any_job_changed |= job_hash(changed, changed.jobs[j], "m") != job_hash(base, base.jobs[j], "m");
    }
    EXPECT_TRUE(any_job_changed) << "edit " << i;
  }
}

TEST(ConfigTest, HashIgnoresOutputDirAndKeyOrder) {
  const RunConfig a = parse(mini_config());
  const RunConfig b = parse(edited([](json& d) { d["output_dir"] = "elsewhere"; }));
  EXPECT_EQ(config_hash(a), config_hash(b));
  EXPECT_EQ(job_hash(a, a.jobs[0], "m"), job_hash(b, b.jobs[0], "m"));
  EXPECT_NE(job_hash(a, a.jobs[0], "m"), job_hash(a, a.jobs[0], "other manifest"));
  const RunConfig reordered = parse(json::parse(mini_config().dump()));
  EXPECT_EQ(config_hash(reordered), config_hash(a));
}

TEST(ConfigTest, UnknownTransformFailsAtParseTime) {
  EXPECT_SYNEVAL_ERROR_MSG(
      parse(edited([](json& d) { d["jobs"][1]["transform"]["name"] = "gaussian_blur"; })), kConfig,
      "gaussian_blur");
}

TEST(ConfigTest, RejectsInconsistentJobs) {
  struct Case {
    std::function<void(json&)> edit;
    const char* needle;
  };
  const std::vector<Case> cases = {
      {[](json& d) { d["bogus"] = 1; }, "unknown key 'bogus'"},
      {[](json& d) { d["jobs"][0].erase("seed"); }, "seed"},
      {[](json& d) { d["jobs"][0].erase("fv"); }, "needs 'fv'"},
      {[](json& d) { d["jobs"][0]["transform"] = {{"name", "hue_shift"}, {"seed", 1}}; },
       "'transform' does not apply"},
      {[](json& d) { d["jobs"][1]["probe"] = "mlp"; }, "does not apply to invariance"},
      {[](json& d) { d["jobs"][1]["transform"]["name"] = "pitch_shift"; }, "does not apply to image"},
      {[](json& d) { d["jobs"][1]["name"] = "hue"; }, "duplicate job name"},
      {[](json& d) { d["jobs"][0]["name"] = "../escape"; }, "must match"},
      {[](json& d) { d["jobs"][0]["dataset"] = "missing"; }, "unknown dataset"},
      {[](json& d) { d["jobs"][1]["transform"]["min"] = -3.0; }, "brightness_shift"},
      {[](json& d) { d["training"]["learning_rate"] = -1.0; }, "learning"},
      {[](json& d) { d["datasets"][0]["extractor"]["dim"] = 1; }, "dim"},
      {[](json& d) { d["datasets"][0]["extractor"]["kind"] = "resnet"; }, "resnet"},
      {[](json& d) {
         d["jobs"][0] = {{"name", "dis"},    {"dataset", "images"}, {"axis", "disentanglement"},
                         {"fv", "brightness"}, {"seed", 1},
                         {"transform", {{"name", "brightness_shift"}, {"seed", 1}}}};
       },
       "targets the predicted FV"},
      {[](json& d) {
         d["datasets"][0]["extractor"] = {{"kind", "external"}, {"clean_store", "c.emb"}};
       },
       "toy extractor"},
  };
  for (const auto& c : cases) {
    EXPECT_SYNEVAL_ERROR_MSG(parse(edited(c.edit)), kConfig, c.needle);
  }
  EXPECT_SYNEVAL_ERROR(parse(edited([](json& d) { d["schema"] = "syneval.config/2"; })), kVersion);
}

TEST(ConfigTest, ExternalEquivarianceNeedsStores) {
  json doc = mini_config();
  doc["datasets"][0]["extractor"] = {{"kind", "external"}, {"clean_store", "c.emb"}};
  doc["jobs"] = json::array({{{"name", "p"},
                              {"dataset", "images"},
                              {"axis", "p_equivariance"},
                              {"seed", 1},
                              {"transformed_store", "t.emb"},
                              {"param_log", "params.json"}}});
  const RunConfig cfg = parse(doc);
  EXPECT_EQ(cfg.jobs[0].param_log, std::filesystem::path("/base/params.json"));
  doc["jobs"][0].erase("param_log");
  EXPECT_SYNEVAL_ERROR_MSG(parse(doc), kConfig, "param_log");
}

TEST(ConfigTest, LoadConfigErrors) {
  syneval::testing::TempDir dir;
  EXPECT_SYNEVAL_ERROR(load_config(dir / "none.json"), kIo);
  syneval::testing::write_file(dir / "bad.json", "{");
  EXPECT_SYNEVAL_ERROR_MSG(load_config(dir / "bad.json"), kConfig, "not valid JSON");
  const auto path = syneval::testing::write_config(dir.path(), mini_config());
  EXPECT_EQ(load_config(path).output_dir, dir / "out");
}

}  // namespace
}  // namespace syneval
