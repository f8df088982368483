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
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "mini_project.h"
#include "test_util.h"

namespace syneval {
namespace {

using syneval::testing::mini_config;
using syneval::testing::TempDir;
using syneval::testing::write_config;

struct Outcome {
  int code = -1;
  std::string output;
};

Outcome cli(const std::string& args) {
  const std::string cmd = std::string(SYNEVAL_CLI_PATH) + " " + args + " 2>&1";
  Outcome out;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (pipe == nullptr) return out;
  char buf[512];
  while (std::fgets(buf, sizeof buf, pipe) != nullptr) out.output += buf;
  const int status = ::pclose(pipe);
  out.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string quoted(const std::filesystem::path& p) { return "'" + p.string() + "'"; }

TEST(CliTest, VersionAndUsage) {
  EXPECT_EQ(cli("--version").code, 0);
  EXPECT_EQ(cli("").code, 1);
  EXPECT_EQ(cli("frobnicate").code, 1);
}

TEST(CliTest, RunReportPlotValidate) {
  TempDir dir;
  syneval::testing::write_image_dataset(dir.path(), 20);
  const auto cfg = write_config(dir.path(), mini_config());
  const Outcome v = cli("validate " + quoted(cfg));
  EXPECT_EQ(v.code, 0) << v.output;
  const Outcome run = cli("run " + quoted(cfg) + " -q");
  ASSERT_EQ(run.code, 0) << run.output;
  EXPECT_TRUE(std::filesystem::exists(dir / "out" / "summary.json"));
  EXPECT_EQ(cli("report " + quoted(dir / "out") + " -o " + quoted(dir / "tables")).code, 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "tables" / "axis_results.csv"));
  EXPECT_EQ(cli("plot " + quoted(dir / "out")).code, 0);
  EXPECT_TRUE(std::filesystem::exists(dir / "out" / "plots"));
}

TEST(CliTest, ExitCodes) {
  TempDir dir;
  syneval::testing::write_image_dataset(dir.path(), 20);
  // 1: invalid configuration, caught before any work.
  auto doc = mini_config();
  doc["jobs"][1]["transform"]["name"] = "gaussian_blur";
  const Outcome bad = cli("run " + quoted(write_config(dir.path(), doc, "bad.json")));
  EXPECT_EQ(bad.code, 1);
  EXPECT_NE(bad.output.find("gaussian_blur"), std::string::npos) << bad.output;
  EXPECT_FALSE(std::filesystem::exists(dir / "out"));
  // 1: validate reports missing inputs.
  doc = mini_config();
  doc["datasets"][0]["manifest"] = "absent.jsonl";
  EXPECT_EQ(cli("validate " + quoted(write_config(dir.path(), doc, "absent.json"))).code, 1);
  // 2: a job fails at run time.
  syneval::testing::write_image_dataset(dir.path(), 10, true, "trainonly");
  doc = mini_config();
  doc["datasets"][0]["manifest"] = "trainonly.jsonl";
  doc["jobs"].erase(1);
  EXPECT_EQ(cli("run -q " + quoted(write_config(dir.path(), doc, "fails.json"))).code, 2);
  // 3: unreadable input.
  EXPECT_EQ(cli("run " + quoted(dir / "missing.json")).code, 3);
  EXPECT_EQ(cli("report " + quoted(dir / "nowhere")).code, 3);
}

TEST(CliTest, FixturesCommand) {
  TempDir dir;
  const Outcome o = cli("fixtures " + quoted(dir / "fx") + " --images 4 --clips 2");
  EXPECT_EQ(o.code, 0) << o.output;
  EXPECT_TRUE(std::filesystem::exists(dir / "fx" / "smoke.json"));
}

}  // namespace
}  // namespace syneval
