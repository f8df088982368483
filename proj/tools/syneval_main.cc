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

// Command-line front end: run, report, plot, validate, fixtures.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "syneval/config.h"
#include "syneval/error.h"
#include "syneval/fixtures.h"
#include "syneval/report.h"
#include "syneval/runner.h"

namespace {

namespace fs = std::filesystem;

int report_error(const syneval::Error& e) {
  std::cerr << "syneval: " << e.what() << "\n";
  return syneval::exit_code_for(e.code());
}

int run(const fs::path& config_path, bool force, std::size_t threads, bool quiet) {
  const auto config = syneval::load_config(config_path);
  syneval::RunOptions options;
  options.force = force;
  options.threads = threads;
  options.log = quiet ? nullptr : &std::cerr;
  const auto result = syneval::run_config(config, options);
  std::size_t failed = 0;
  for (const auto& job : result.jobs) {
    if (job.status == "failed") {
      ++failed;
      std::cerr << "job " << job.name << " failed: " << job.error << "\n";
    }
  }
  std::cout << result.summary.string() << "\n";
  if (failed) std::cerr << failed << " of " << result.jobs.size() << " jobs failed\n";
  return result.exit_code;
}

int validate(const fs::path& config_path) {
  const auto config = syneval::load_config(config_path);
  const auto problems = syneval::validate_inputs(config);
  for (const auto& p : problems) std::cerr << p << "\n";
  if (!problems.empty()) return syneval::kExitInvalid;
  std::cout << "ok: " << config.datasets.size() << " datasets, " << config.jobs.size() << " jobs\n";
  return syneval::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic-transform representation evaluation"};
  app.set_version_flag("--version", std::string(syneval::engine_version()));
  app.require_subcommand(1);

  std::string config_path;
  bool force = false;
  bool quiet = false;
  std::size_t threads = 1;
  auto* run_cmd = app.add_subcommand("run", "Run every job in a config");
  run_cmd->add_option("config", config_path, "Config JSON")->required();
  run_cmd->add_flag("--force", force, "Recompute jobs whose reports are current");
  run_cmd->add_option("--jobs", threads, "Concurrent jobs")->check(CLI::PositiveNumber);
  run_cmd->add_flag("-q,--quiet", quiet, "No progress output");

  std::string results_dir;
  std::string out_dir;
  auto* report_cmd = app.add_subcommand("report", "Rebuild CSV tables from reports");
  report_cmd->add_option("dir", results_dir, "Results directory")->required();
  report_cmd->add_option("-o,--out", out_dir, "Output directory (default <dir>/tables)");
  auto* plot_cmd = app.add_subcommand("plot", "Render SVG figures from reports");
  plot_cmd->add_option("dir", results_dir, "Results directory")->required();
  plot_cmd->add_option("-o,--out", out_dir, "Output directory (default <dir>/plots)");

  auto* validate_cmd = app.add_subcommand("validate", "Check a config and its inputs");
  validate_cmd->add_option("config", config_path, "Config JSON")->required();

  std::string fixture_dir;
  std::size_t images = 32;
  std::size_t clips = 16;
  auto* fixtures_cmd = app.add_subcommand("fixtures", "Write the bundled smoke dataset and configs");
  fixtures_cmd->add_option("dir", fixture_dir, "Destination directory")->required();
  fixtures_cmd->add_option("--images", images, "Number of images")->check(CLI::PositiveNumber);
  fixtures_cmd->add_option("--clips", clips, "Number of audio clips")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? syneval::kExitOk : syneval::kExitInvalid;
  }

  try {
    if (*run_cmd) return run(config_path, force, threads, quiet);
    if (*validate_cmd) return validate(config_path);
    if (*report_cmd) {
      const fs::path out = out_dir.empty() ? fs::path(results_dir) / "tables" : fs::path(out_dir);
      for (const auto& p : syneval::rebuild_tables(results_dir, out)) std::cout << p.string() << "\n";
      return syneval::kExitOk;
    }
    if (*plot_cmd) {
      const fs::path out = out_dir.empty() ? fs::path(results_dir) / "plots" : fs::path(out_dir);
      for (const auto& p : syneval::rebuild_plots(results_dir, out)) std::cout << p.string() << "\n";
      return syneval::kExitOk;
    }
    if (*fixtures_cmd) {
      std::cout << syneval::write_smoke_fixture(fixture_dir, images, clips).string() << "\n";
      return syneval::kExitOk;
    }
  } catch (const syneval::Error& e) {
    return report_error(e);
  } catch (const fs::filesystem_error& e) {
    std::cerr << "syneval: " << e.what() << "\n";
    return syneval::kExitIo;
  }
  return syneval::kExitInvalid;
}
